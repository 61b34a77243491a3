"""Run manifests: what was run, from which configuration, with what outcome."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
import json
from pathlib import Path
import time
from typing import Any

from anisolp import __version__
from anisolp.protocol.digests import digest_payload


MANIFEST_NAME = "manifest.json"

STATUS_RUNNING = "running"
STATUS_COMPLETED = "completed"
STATUS_BLOWUP = "blowup_suspected"
STATUS_FAILED = "failed"


@dataclass
class RunManifest:
    config_path: str
    out_dir: str
    config_hash: str
    version: str = __version__
    status: str = STATUS_RUNNING
    started_ns: int = field(default_factory=time.time_ns)
    finished_ns: int | None = None
    records: int = 0
    files: list[str] = field(default_factory=list)
    message: str = ""

    @classmethod
    def for_config(cls, config_path: Path, out_dir: Path, content: dict[str, Any]) -> "RunManifest":
        return cls(
            config_path=str(config_path),
            out_dir=str(out_dir),
            config_hash=digest_payload(content),
        )

    def finish(self, status: str, *, records: int, message: str = "") -> None:
        self.status = status
        self.records = records
        self.message = message
        self.finished_ns = time.time_ns()

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "RunManifest":
        return RunManifest(**data)

    def write(self, out_dir: Path | None = None) -> Path:
        target = Path(out_dir or self.out_dir) / MANIFEST_NAME
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return target


def read_manifest(path: Path) -> RunManifest:
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    return RunManifest.from_dict(json.loads(path.read_text(encoding="utf-8")))
