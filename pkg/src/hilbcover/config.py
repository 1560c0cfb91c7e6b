"""Numerical tolerances and experiment configuration."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

# geometric predicates (containment, coplanarity, degeneracy)
EPS_GEOM = 1e-9
# points closer than this to the boundary are rejected by the metric code
EPS_BOUNDARY = 1e-12
TOL_METRIC = 1e-9
TOL_DUAL = 1e-6
TOL_CROSS = 1e-8
TOL_CHORD = 1e-6
TOL_SET_DIST = 1e-6
TOL_EXPAND = 1e-9
TOL_BALL = 1e-9

# a priori bound on the Hilbert radius of the inner body
R_PLUS = 8.0

DEFAULT_NDIR = {1: 2, 2: 720, 3: 1280}
DEFAULT_SAMPLES = 20000
QUAD_ORDER = 8
N_SEEDS = 5

# verdict tolerances per estimate kind
TOL_EXACT = 1e-9
TOL_QUADRATURE = 1e-6
MC_SIGMAS = 3.0


def default_ndir(dim: int) -> int:
    return DEFAULT_NDIR[dim]


def thread_cap() -> int:
    """Worker cap from HILBCOVER_THREADS, default 1."""
    raw = os.environ.get("HILBCOVER_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ExperimentConfig:
    """One duality sweep: instances x alphas x seeds."""
    dim: int = 2
    geometry: str = "hilbert"  # "hilbert" or "minkowski"
    n_instances: int = 10
    alphas: tuple[float, ...] = (0.1, 0.2, 0.5, 1.0)
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)
    base_seed: int = 0
    n_samples: int = DEFAULT_SAMPLES
    n_dir: int | None = None
    budget: float = 64.0
    targets: tuple[str, ...] = ("body", "boundary")
    extra: dict = field(default_factory=dict)

    def ndir(self) -> int:
        return self.n_dir or default_ndir(self.dim)
