"""Wide CSV table of a trajectory for plotting tools."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

from anisolp.diagnostics.record import DiagnosticsRecord


def pivot(records: Sequence[DiagnosticsRecord]) -> tuple[list[str], list[list[float | str]]]:
    """Columns in first-seen order with ``t`` first; missing cells stay empty."""
    rows = [record.to_dict() for record in records]
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    if "t" in columns:
        columns.remove("t")
        columns.insert(0, "t")
    table = [[row.get(column, "") for column in columns] for row in rows]
    return columns, table


def write_pivot(path: Path, records: Sequence[DiagnosticsRecord]) -> Path:
    columns, table = pivot(records)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in table:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return path
