"""Seeded random instances shared by checks, sweeps and tests."""
from __future__ import annotations

import numpy as np

from .convex_core import (ConvexBody, gauge, interval, random_hull,
                          symmetrize)


def _seed(*parts) -> int:
    return int(np.random.default_rng(list(parts)).integers(2**31))


def random_body(seed: int, dim: int = 2, n_range=(6, 16)) -> ConvexBody:
    """Random hull centered at its centroid (so the origin is interior)."""
    rng = np.random.default_rng([seed, 11])
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    if dim == 1:
        a, b = rng.uniform(0.3, 1.0, size=2)
        return interval(-float(a), float(b))
    return random_hull(max(n, dim + 2), _seed(seed, 12), dim)


def random_symmetric(seed: int, dim: int = 2) -> ConvexBody:
    rng = np.random.default_rng([seed, 21])
    n = int(rng.integers(3, 9))
    base = random_hull(max(n, dim + 1), _seed(seed, 22), dim, center=False)
    return symmetrize(base, "union")


def random_linear(seed: int, dim: int = 2, spread: float = 0.5) -> np.ndarray:
    rng = np.random.default_rng([seed, 31])
    A = np.eye(dim) + spread * rng.standard_normal((dim, dim))
    while abs(np.linalg.det(A)) < 0.2:
        A = np.eye(dim) + spread * rng.standard_normal((dim, dim))
    return A


def random_pair(seed: int, dim: int = 2, scale_range=(0.3, 0.7)):
    """(G, K) with the origin interior to G and G inside s K, s drawn from scale_range."""
    rng = np.random.default_rng([seed, 41])
    K = random_body(_seed(seed, 42), dim)
    G0 = random_body(_seed(seed, 43), dim)
    s = rng.uniform(*scale_range)
    fit = float(gauge(K, G0.vertices).max())
    G = G0.scaled(s / fit)
    return G, K


def random_point(K: ConvexBody, seed: int, shrink: float = 0.9):
    """Interior point drawn uniformly from the shrunken body about the centroid."""
    from .convex_core import centroid, sample_uniform
    rng = np.random.default_rng([seed, 51])
    c = centroid(K)
    p = sample_uniform(K, 1, rng)[0]
    return c + shrink * (p - c)
