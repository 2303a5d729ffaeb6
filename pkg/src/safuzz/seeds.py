"""Deterministic seed derivation: one root seed fans out to per-module,
per-unit, per-attempt streams without collisions across platforms."""

from __future__ import annotations

import hashlib


def derive(root: int, *labels) -> int:
    """Stable 63-bit child seed for (root, labels...)."""
    h = hashlib.sha256()
    h.update(str(root).encode())
    for label in labels:
        h.update(b"\x1f")
        h.update(str(label).encode())
    return int.from_bytes(h.digest()[:8], "big") >> 1
