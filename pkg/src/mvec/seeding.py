"""Deterministic seed derivation.

Every source of randomness in the package draws from a numpy Generator whose
seed is derived from a user-supplied root seed plus a context path (node id,
iteration index, repeat index, ...). Derivation is a stable hash, so results
are reproducible across processes and platforms and independent of execution
schedule.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(seed: int, *path: object) -> int:
    """Derive a 64-bit child seed from a root seed and a context path."""
    digest = hashlib.blake2b(
        repr((int(seed),) + tuple(path)).encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def rng_for(seed: int, *path: object) -> np.random.Generator:
    """Generator seeded by `derive_seed(seed, *path)`."""
    return np.random.default_rng(derive_seed(seed, *path))
