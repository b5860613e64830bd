"""Small shared helpers for deterministic serialization."""

from __future__ import annotations

import hashlib
import json


def canonical_json(obj) -> str:
    """Stable rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sha256_hex(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()
