"""Small shared helpers: stable hashing, seed derivation, float formatting."""

from __future__ import annotations

import hashlib


def stable_hash64(data: str) -> int:
    """Seed-free 64-bit hash of a string, identical across runs and platforms."""
    digest = hashlib.blake2b(data.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_seed(*parts) -> int:
    """Mix arbitrary parts into a deterministic 64-bit substream seed."""
    key = "\x1e".join(str(p) for p in parts)
    return stable_hash64(key)


def fmt_num(x) -> str:
    """Render a numeric cell for CSV output; None becomes an empty cell."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")
