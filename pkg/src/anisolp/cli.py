"""Command-line entry point: run, norms, verify, decompose, report.

Exit codes: 0 success, 1 hard-bound or identity failure, 2 usage or
configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
from pathlib import Path
import sys
from typing import Any, Sequence

import scipy.fft

from anisolp import __version__
from anisolp.errors import (
    AnisoError,
    BlowupSuspected,
    ConfigError,
    CutoffError,
    FieldFormatError,
    GridError,
    NormSpecError,
    SuiteError,
)
from anisolp.export.csv_pivot import write_pivot
from anisolp.export.jsonl import JsonlWriter, read_records
from anisolp.export.manifest import STATUS_BLOWUP, STATUS_COMPLETED, STATUS_FAILED, RunManifest
from anisolp.lab.corpus import CorpusSpec
from anisolp.lab.suites import SUITE_NAMES, format_table, run_suite
from anisolp.littlewood_paley.blocks import band_split
from anisolp.norms.evaluate import evaluate
from anisolp.norms.spec import parse_norm_spec_json
from anisolp.protocol.field_v1 import read_field, write_field
from anisolp.solver.config import load_config
from anisolp.solver.run import build_initial, run
from anisolp.solver.stepper import SolverState
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_HARD_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_THREADS_ENV = "ANISO_THREADS"
_LOG_LEVEL_ENV = "ANISO_LOG_LEVEL"

TRAJECTORY_NAME = "trajectory.jsonl"
FINAL_FIELD_NAME = "final.anbf"
BAND_NAMES = ("flat", "natural", "sharp")


def _threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(_THREADS_ENV, "").strip()
    if not env:
        return 1
    try:
        count = int(env)
    except ValueError as exc:
        raise ConfigError(f"{_THREADS_ENV} must be an integer. Got: {env!r}") from exc
    if count < 1:
        raise ConfigError(f"{_THREADS_ENV} must be >= 1. Got: {count}")
    return count


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer. Got: {text}")
    return value


def _dump_json(payload: Any, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def cmd_run(args: argparse.Namespace) -> int:
    # Everything that can fail on bad input happens before the output directory exists.
    config = load_config(args.config)
    initial = build_initial(config)
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest.for_config(args.config, out_dir, config.content())
    manifest.files.append(TRAJECTORY_NAME)
    manifest.write()

    checkpoints: list[str] = []

    def checkpoint(state: SolverState) -> None:
        name = f"checkpoint_{len(checkpoints):05d}.anbf"
        write_field(out_dir / name, state.v, {"t": state.t, "config_hash": manifest.config_hash})
        checkpoints.append(name)

    status = STATUS_FAILED
    try:
        with JsonlWriter(out_dir / TRAJECTORY_NAME) as writer:
            trajectory = run(config, initial=initial, on_record=writer.write, on_checkpoint=checkpoint)
        status = trajectory.status
        final = trajectory.final_state
        if final is not None:
            write_field(out_dir / FINAL_FIELD_NAME, final.v, {"t": final.t, "config_hash": manifest.config_hash})
            checkpoints.append(FINAL_FIELD_NAME)
        manifest.files.extend(checkpoints)
        manifest.finish(status, records=len(trajectory.records), message=trajectory.message)
    finally:
        if status == STATUS_FAILED:
            manifest.finish(STATUS_FAILED, records=0, message="run aborted")
        manifest.write()
    if status == STATUS_BLOWUP:
        print(f"run stopped early: {manifest.message}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(f"wrote {manifest.records} records to {out_dir / TRAJECTORY_NAME}")
    return EXIT_OK if status == STATUS_COMPLETED else EXIT_NUMERICAL


def _read_spec_text(value: str) -> str:
    path = Path(value)
    if not value.lstrip().startswith("{") and path.exists():
        return path.read_text(encoding="utf-8")
    return value


def cmd_norms(args: argparse.Namespace) -> int:
    spec = parse_norm_spec_json(_read_spec_text(args.spec))
    field = read_field(args.field)
    result = evaluate(spec, field)
    _dump_json(result.to_dict(), args.out)
    return EXIT_OK if math.isfinite(result.value) else EXIT_NUMERICAL


def cmd_verify(args: argparse.Namespace) -> int:
    corpus = CorpusSpec(n=args.corpus_size, size=args.size, base_seed=args.seed, k_hi=args.k_hi)
    result = run_suite(args.suite, corpus, use_cache=not args.no_cache)
    _dump_json(result.to_list(), args.out)
    table = format_table(result)
    print(table, file=sys.stdout if args.out is not None else sys.stderr)
    if any(r.ratio is not None and math.isnan(r.ratio) for r in result.reports):
        return EXIT_NUMERICAL
    return EXIT_OK if result.passed else EXIT_HARD_FAILURE


def _split_field(
    field: SpectralScalarField | SpectralVectorField, lam: float, Lam: float
) -> dict[str, SpectralScalarField | SpectralVectorField]:
    if isinstance(field, SpectralScalarField):
        return dict(band_split(field, lam, Lam).parts())
    triples = [band_split(comp, lam, Lam).parts() for comp in field]
    # An |xi_h| indicator is a Fourier multiplier, so each band stays divergence-free.
    return {
        name: SpectralVectorField(tuple(t[name] for t in triples), divfree=field.divfree)  # type: ignore[arg-type]
        for name in BAND_NAMES
    }


def cmd_decompose(args: argparse.Namespace) -> int:
    field = read_field(args.field)
    parts = _split_field(field, args.lam, args.Lam)
    out_dir: Path = args.out
    provenance = {"source": str(args.field), "lambda": args.lam, "Lambda": args.Lam}
    for name in BAND_NAMES:
        target = write_field(out_dir / f"{name}.anbf", parts[name], {**provenance, "band": name})
        print(target)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    records = read_records(args.trajectory)
    out = args.out or args.trajectory.with_suffix(".csv")
    write_pivot(out, records)
    print(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anisolp",
        description="Pseudo-spectral Navier-Stokes runs, anisotropic norms and inequality checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=os.environ.get(_LOG_LEVEL_ENV, "WARNING"),
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        type=str.upper,
    )
    parser.add_argument(
        "--threads", type=_positive_int, default=None, help=f"FFT workers (default ${_THREADS_ENV} or 1)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="integrate a configuration and write a trajectory")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("norms", help="evaluate a norm on a stored field")
    p.add_argument("field", type=Path)
    p.add_argument("--spec", required=True, help="NormSpec JSON text or file")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=cmd_norms)

    p = sub.add_parser("verify", help="run an inequality-lab suite over the seeded corpus")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus-size", type=_positive_int, default=CorpusSpec.n)
    p.add_argument("--size", type=_positive_int, default=CorpusSpec.size, help="grid points per axis")
    p.add_argument("--k-hi", type=float, default=CorpusSpec.k_hi, help="outer shell radius of the corpus fields")
    p.add_argument("--out", type=Path, default=None, help="JSON report path (default stdout)")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("decompose", help="split a field into flat, natural and sharp horizontal bands")
    p.add_argument("field", type=Path)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--Lambda", dest="Lam", type=float, required=True)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("report", help="pivot a trajectory into a CSV table")
    p.add_argument("trajectory", type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    try:
        workers = _threads(args.threads)
        with scipy.fft.set_workers(workers):
            return args.handler(args)
    except (ConfigError, SuiteError, NormSpecError, FieldFormatError, CutoffError, GridError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BlowupSuspected as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except AnisoError as exc:
        logger.debug("unhandled toolkit error", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HARD_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
