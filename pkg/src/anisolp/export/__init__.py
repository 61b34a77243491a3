"""Trajectory, report and manifest files."""

from anisolp.export.csv_pivot import pivot, write_pivot
from anisolp.export.jsonl import JsonlWriter, read_records, write_records
from anisolp.export.manifest import RunManifest, read_manifest

__all__ = [
    "JsonlWriter",
    "RunManifest",
    "pivot",
    "read_manifest",
    "read_records",
    "write_pivot",
    "write_records",
]
