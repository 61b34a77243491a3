"""JSON-lines trajectories, one diagnostics record per line."""

from __future__ import annotations

import json
from pathlib import Path
from typing import IO, Iterable

from anisolp.diagnostics.record import DiagnosticsRecord
from anisolp.errors import FieldFormatError


def record_line(record: DiagnosticsRecord) -> str:
    return json.dumps(record.to_dict(), ensure_ascii=False, separators=(",", ":"))


class JsonlWriter:
    """Append records to a JSON-lines file, flushing after each line."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)
        self._handle: IO[str] | None = None
        self.count = 0

    def __enter__(self) -> "JsonlWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = self.path.open("w", encoding="utf-8")
        return self

    def __exit__(self, *exc_info: object) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def write(self, record: DiagnosticsRecord) -> None:
        if self._handle is None:
            raise RuntimeError("JsonlWriter is not open")
        self._handle.write(record_line(record) + "\n")
        self._handle.flush()
        self.count += 1


def write_records(path: Path, records: Iterable[DiagnosticsRecord]) -> Path:
    with JsonlWriter(path) as writer:
        for record in records:
            writer.write(record)
    return Path(path)


def read_records(path: Path) -> list[DiagnosticsRecord]:
    path = Path(path)
    records = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(DiagnosticsRecord.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise FieldFormatError(f"{path}:{lineno}: invalid trajectory record: {exc}") from exc
    return records
