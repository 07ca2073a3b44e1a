"""Shared utilities: hierarchical RNG spawning and light array validation."""

from __future__ import annotations

import numpy as np

__all__ = ["spawn_rng", "as_generator", "check_vector"]


def spawn_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Return a PCG64 generator derived from ``master_seed`` and an integer key path.

    Every distinct key path yields a statistically independent stream, and the
    same ``(master_seed, key)`` always yields the same stream.  All stochastic
    components draw from generators created this way so that experiments are
    reproducible and runs can be paired across configurations.
    """
    seq = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(seq))


def as_generator(seed) -> np.random.Generator:
    """Coerce ``seed`` (None, int, or Generator) into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def check_vector(x, name: str = "x") -> np.ndarray:
    """Validate that ``x`` is a finite 1-D float vector and return it as an array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr
