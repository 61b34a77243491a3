from __future__ import annotations

import hashlib
import json
from typing import Any


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_token(data: bytes) -> str:
    return f"sha256:{sha256_hex(data)}"


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def canonical_bytes(payload: Any) -> bytes:
    return canonical_json(payload).encode("utf-8")


def digest_payload(payload: Any) -> str:
    return sha256_token(canonical_bytes(payload))
