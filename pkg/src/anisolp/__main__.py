from anisolp.cli import main

raise SystemExit(main())
