"""Canonical JSON bytes and SHA-256 digests."""

from __future__ import annotations

import hashlib
import json


def canonical_json(obj: object) -> bytes:
    """UTF-8, sorted keys, no insignificant whitespace.  Floats are rejected."""
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def digest(obj: object) -> str:
    return sha256_hex(canonical_json(obj))


def _reject_floats(obj: object) -> None:
    if isinstance(obj, float):
        raise TypeError(f"floating point value {obj!r} in canonical payload")
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key {k!r} in canonical payload")
            _reject_floats(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _reject_floats(v)
