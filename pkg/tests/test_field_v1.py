from __future__ import annotations

import struct
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from anisolp.errors import FieldFormatError
from anisolp.protocol.digests import digest_payload, sha256_token
from anisolp.protocol.field_v1 import HEADER_SIZE, decode_header, encode_field, encode_header
from anisolp.spectral.field import SpectralScalarField
from anisolp.spectral.grid import Grid


def test_digest_vectors() -> None:
    assert sha256_token(b"") == (
        "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
    )
    assert digest_payload({"b": [1.5, "x"], "a": 1}) == (
        "sha256:253252306831c7a53e616d2fac19ec1f21555d2c739d3366d5fa6399d3cce7be"
    )


def test_header_layout() -> None:
    header = encode_header(Grid(8, 12, 16), 3)
    assert len(header) == HEADER_SIZE
    assert header[:24] == b"ANBF" + struct.pack("<IIIII", 1, 8, 12, 16, 3)
    assert header[24:] == b"\x00" * (HEADER_SIZE - 24)
    assert decode_header(header) == (Grid(8, 12, 16), 3)


def test_payload_runs_k1_fastest() -> None:
    grid = Grid(8, 8, 8)
    field = SpectralScalarField.from_modes(grid, {(1, 0, 0): 0.5})
    payload = np.frombuffer(encode_field(field), dtype="<c8", offset=HEADER_SIZE)
    assert payload.size == grid.size
    assert np.flatnonzero(payload).tolist() == [1, 7]
    assert payload[1] == np.complex64(0.5)


def test_rejects_bad_component_count() -> None:
    header = bytearray(encode_header(Grid(8, 8, 8), 3))
    header[20:24] = struct.pack("<I", 2)
    with pytest.raises(FieldFormatError):
        decode_header(bytes(header))
