"""Counter-based random stream splitting.

Every random draw in the library flows from a single experiment seed plus a
tuple of split keys (strings or ints), so per-trajectory and per-check streams
are reproducible and independent of execution order.
"""

import zlib

import numpy as np


def _key_to_int(part) -> int:
    if isinstance(part, (int, np.integer)):
        return int(part) & 0xFFFFFFFF
    return zlib.crc32(str(part).encode("utf-8"))


def split_rng(seed: int, *key) -> np.random.Generator:
    """Child generator for (seed, *key), stable across runs and platforms."""
    entropy = [int(seed) & 0xFFFFFFFF] + [_key_to_int(part) for part in key]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def unit_directions(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """n unit vectors in R^dim; uniform sweep with seeded offset when dim == 2."""
    if dim == 2:
        offset = rng.uniform(0.0, 2.0 * np.pi / max(n, 1))
        angles = offset + 2.0 * np.pi * np.arange(n) / max(n, 1)
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    vecs = rng.normal(size=(n, dim))
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return vecs / norms


def ball_points(rng: np.random.Generator, n: int, dim: int, radius: float) -> np.ndarray:
    """n points sampled uniformly from the closed ball of given radius."""
    dirs = unit_directions(rng, n, dim)
    radii = radius * rng.uniform(0.0, 1.0, size=(n, 1)) ** (1.0 / dim)
    return dirs * radii
