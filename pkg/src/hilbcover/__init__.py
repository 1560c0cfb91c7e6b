"""Numerical toolkit for Hilbert, Funk and Minkowski geometries on convex polytopes.

Covers polarity, Holmes-Thompson and Busemann measures, metric balls,
expansions and covering numbers, with a registry of verification checks.
"""
from .convex_core import (ConvexBody, Halfspace, Subspace, cube, cross_polytope, gauge,
                          interval, minkowski_sum, ngon, parse_body_spec, polar,
                          random_hull, regular_simplex, support, symmetrize)
from .metrics import (FunkMetric, HilbertMetric, MinkowskiMetric, funk_distance,
                      hilbert_ball, hilbert_distance, make_metric)
from .measures import (MeasureEstimate, ht_area_finsler, ht_area_minkowski,
                       ht_volume_finsler, ht_volume_minkowski)
from .cover_expand import (covering_estimate, expand_hilbert, expand_minkowski,
                           maximal_separated_net)
from .checks import CheckConfig, list_checks, run_check
from .harness import duality_experiment
from .config import ExperimentConfig
from .report import CheckReport, emit_report

__version__ = "0.1.0"
