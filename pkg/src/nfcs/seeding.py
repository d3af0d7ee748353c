"""Stable, process-independent seed derivation for reproducible experiments."""

import hashlib

import numpy as np

_SEP = b"\x1f"


def derive_seed(*parts) -> int:
    """Derive a 64-bit seed from a tuple of hashable parts.

    Uses SHA-256 over a canonical byte encoding, so the result is stable
    across processes, platforms and Python versions (unlike ``hash()``).
    Floats are encoded via ``repr`` to keep full precision.
    """
    h = hashlib.sha256()
    for p in parts:
        if isinstance(p, bytes):
            h.update(p)
        elif isinstance(p, (list, tuple)):
            h.update(derive_seed(*p).to_bytes(8, "little"))
        else:
            h.update(repr(p).encode())
        h.update(_SEP)
    return int.from_bytes(h.digest()[:8], "little")


def rng_from(*parts) -> np.random.Generator:
    """Generator seeded deterministically from the given parts."""
    return np.random.default_rng(derive_seed(*parts))


def as_rng(seed) -> np.random.Generator:
    """Coerce an int seed, seed tuple, Generator or None into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, (list, tuple)):
        return rng_from(*seed)
    return np.random.default_rng(seed)
