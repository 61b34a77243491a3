"""ANBF binary field container with JSON sidecar."""

from __future__ import annotations

import json
from pathlib import Path
import struct
from typing import Any

import numpy as np

from anisolp.errors import FieldError, FieldFormatError, GridError
from anisolp.protocol.digests import canonical_json, sha256_token
from anisolp.spectral.field import SpectralScalarField, SpectralVectorField
from anisolp.spectral.grid import Grid
from anisolp.spectral.ops import leray_project


ANBF_MAGIC = b"ANBF"
ANBF_VERSION = 1
HEADER_SIZE = 64
_HEADER_STRUCT = struct.Struct("<4sIIIII")
_PAYLOAD_DTYPE = np.dtype("<c8")

AnyField = SpectralScalarField | SpectralVectorField


def sidecar_path(path: Path) -> Path:
    return Path(f"{path}.json")


def _components(field: AnyField) -> list[SpectralScalarField]:
    if isinstance(field, SpectralScalarField):
        return [field]
    if isinstance(field, SpectralVectorField):
        return list(field.components)
    raise TypeError("field must be SpectralScalarField or SpectralVectorField")


def encode_header(grid: Grid, ncomp: int) -> bytes:
    packed = _HEADER_STRUCT.pack(ANBF_MAGIC, ANBF_VERSION, grid.n1, grid.n2, grid.n3, ncomp)
    return packed.ljust(HEADER_SIZE, b"\x00")


def decode_header(data: bytes) -> tuple[Grid, int]:
    if len(data) < HEADER_SIZE:
        raise FieldFormatError(f"truncated header: {len(data)} bytes")
    magic, version, n1, n2, n3, ncomp = _HEADER_STRUCT.unpack_from(data, 0)
    if magic != ANBF_MAGIC:
        raise FieldFormatError(f"bad magic {magic!r}")
    if version != ANBF_VERSION:
        raise FieldFormatError(f"unsupported ANBF version {version}")
    if ncomp not in (1, 3):
        raise FieldFormatError(f"component count must be 1 or 3. Got: {ncomp}")
    try:
        grid = Grid(n1, n2, n3)
    except GridError as exc:
        raise FieldFormatError(f"header grid is invalid: {exc}") from exc
    return grid, ncomp


def encode_payload(field: AnyField) -> bytes:
    chunks = []
    for comp in _components(field):
        # k3 varies slowest, k1 fastest.
        chunks.append(np.ascontiguousarray(comp.coeffs.transpose(2, 1, 0)).astype(_PAYLOAD_DTYPE).tobytes())
    return b"".join(chunks)


def encode_field(field: AnyField) -> bytes:
    comps = _components(field)
    return encode_header(comps[0].grid, len(comps)) + encode_payload(field)


def decode_arrays(data: bytes) -> tuple[Grid, list[np.ndarray]]:
    grid, ncomp = decode_header(data)
    count = grid.size
    expected = HEADER_SIZE + ncomp * count * _PAYLOAD_DTYPE.itemsize
    if len(data) != expected:
        raise FieldFormatError(f"payload size mismatch: {len(data)} bytes, expected {expected}")
    flat = np.frombuffer(data, dtype=_PAYLOAD_DTYPE, offset=HEADER_SIZE)
    arrays = []
    for index in range(ncomp):
        block = flat[index * count : (index + 1) * count]
        arrays.append(
            block.reshape(grid.n3, grid.n2, grid.n1).transpose(2, 1, 0).astype(np.complex128)
        )
    return grid, arrays


def build_sidecar(field: AnyField, provenance: dict[str, Any] | None, payload: bytes) -> dict[str, Any]:
    comps = _components(field)
    return {
        "format": ANBF_MAGIC.decode("ascii"),
        "version": ANBF_VERSION,
        "grid": comps[0].grid.to_dict(),
        "components": len(comps),
        "divfree": bool(getattr(field, "divfree", False)),
        "means": [comp.mean for comp in comps],
        "provenance": provenance or {},
        "payload_digest": sha256_token(payload),
    }


def write_field(path: Path, field: AnyField, provenance: dict[str, Any] | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = encode_field(field)
    sidecar = build_sidecar(field, provenance, blob[HEADER_SIZE:])
    path.write_bytes(blob)
    sidecar_path(path).write_text(canonical_json(sidecar) + "\n", encoding="utf-8")
    return path


def read_sidecar(path: Path) -> dict[str, Any]:
    meta_path = sidecar_path(Path(path))
    if not meta_path.exists():
        return {}
    try:
        data = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FieldFormatError(f"{meta_path}: invalid JSON at line {exc.lineno}") from exc
    if not isinstance(data, dict):
        raise FieldFormatError(f"{meta_path}: sidecar must be a JSON object")
    return data


def read_field(path: Path) -> AnyField:
    """Load a field; a divergence-free flag in the sidecar is re-certified by projection."""
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise FieldFormatError(f"cannot read field file {path}: {exc}") from exc
    grid, arrays = decode_arrays(blob)
    meta = read_sidecar(path)
    digest = meta.get("payload_digest")
    if digest is not None and digest != sha256_token(blob[HEADER_SIZE:]):
        raise FieldFormatError(f"{path}: payload digest does not match sidecar")
    means = list(meta.get("means") or [0.0] * len(arrays))
    if len(means) != len(arrays):
        raise FieldFormatError(f"{path}: sidecar lists {len(means)} means for {len(arrays)} components")
    try:
        comps = [
            SpectralScalarField(grid, arr, float(mean))
            for arr, mean in zip(arrays, means)
        ]
    except FieldError as exc:
        raise FieldFormatError(f"{path}: {exc}") from exc
    if len(comps) == 1:
        return comps[0]
    vector = SpectralVectorField(tuple(comps), check=False)  # type: ignore[arg-type]
    if meta.get("divfree"):
        vector = leray_project(vector)
    return vector

