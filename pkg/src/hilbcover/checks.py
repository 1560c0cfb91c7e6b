"""Registry of numerical checks.  Each check returns a deterministic CheckReport."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import config as cfgmod
from .convex_core import (Halfspace, Subspace, centroid, cube, gauge, hausdorff,
                          interval, minkowski_sum, polar, slice_project_dual_check,
                          symmetrize)
from .cover_expand import (boundary_transfer_check, complementary_chord_2d,
                           expand_hilbert, expand_minkowski, fatness_check,
                           relative_isoperimetry_sample)
from .errors import UnknownCheck
from .instances import (random_body, random_pair, random_point,
                        random_symmetric, _seed)
from .measures import (ball_growth_profile, ht_area_finsler, ht_area_minkowski,
                       ht_area_minkowski_cauchy, ht_volume_finsler,
                       ht_volume_minkowski)
from .metrics import (HilbertMetric, MinkowskiMetric, funk_distance,
                      funk_distance_variational, hilbert_distance,
                      hilbert_distance_cross_ratio, hilbert_finsler_ball,
                      macbeath_radii, projective_polar_map, sandwich_estimate)
from .report import CheckReport, safe_ratio


@dataclass(frozen=True)
class CheckConfig:
    seed: int = 0
    dim: int = 2
    alpha: float | None = None
    samples: int = cfgmod.DEFAULT_SAMPLES
    ndir: int | None = None
    trials: int | None = None


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    fn: Callable[[CheckConfig], CheckReport]


REGISTRY: dict[str, Check] = {}


def register(check_id: str, anchor: str):
    def deco(fn):
        REGISTRY[check_id] = Check(check_id, anchor, fn)
        return fn
    return deco


def list_checks():
    return [(c.check_id, c.anchor) for c in REGISTRY.values()]


def run_check(check_id: str, config: CheckConfig | None = None) -> CheckReport:
    if check_id not in REGISTRY:
        raise UnknownCheck(check_id)
    config = config or CheckConfig()
    t0 = time.perf_counter()
    rep = REGISTRY[check_id].fn(config)
    rep.runtime_ms = 1e3 * (time.perf_counter() - t0)
    rep.inputs.setdefault("dim", config.dim)
    rep.seed = config.seed
    return rep


def _report(cid, inputs, lhs, rhs, ratio, tol, passed, std_error=0.0, **extra):
    return CheckReport(cid, inputs, float(lhs), float(rhs), float(ratio), float(tol),
                       bool(passed), None, 0.0, float(std_error), extra)


def _trials(c: CheckConfig, default: int) -> int:
    return c.trials or default


# convex core --------------------------------------------------------------------

@register("polar_involution", "polarity is an involution: (K polar) polar = K")
def _polar_involution(c):
    n = _trials(c, 20)
    worst = 0.0
    for i in range(n):
        K = random_body(_seed(c.seed, i), c.dim)
        worst = max(worst, hausdorff(polar(polar(K)), K))
    tol = cfgmod.TOL_EXACT
    return _report("polar_involution", {"dim": c.dim, "trials": n}, worst, tol, worst / tol,
                   tol, worst <= tol)


@register("slice_project_dual", "polar of a central section equals the projection of the polar")
def _slice_project(c):
    n = _trials(c, 100)
    worst = 0.0
    for i in range(n):
        rng = np.random.default_rng([c.seed, i, 7])
        d = 2 if i % 2 == 0 else 3
        K = random_body(_seed(c.seed, i), d)
        k = 1 if d == 2 else int(rng.integers(1, 3))
        E = Subspace(rng.standard_normal((k, d)))
        worst = max(worst, slice_project_dual_check(K, E).lhs)
    tol = cfgmod.TOL_DUAL
    return _report("slice_project_dual", {"dim": "2,3", "trials": n}, worst, tol, worst / tol,
                   tol, worst <= tol)


# metrics ------------------------------------------------------------------------------

@register("funk_variational", "Funk distance as a supremum over the polar body")
def _funk_variational(c):
    n = _trials(c, 200)
    worst = 0.0
    for i in range(n):
        K = random_body(_seed(c.seed, i), c.dim)
        x = random_point(K, _seed(c.seed, i, 1))
        y = random_point(K, _seed(c.seed, i, 2))
        worst = max(worst, abs(float(funk_distance(K, x, y))
                               - float(funk_distance_variational(K, x, y))))
    tol = 1e-8
    return _report("funk_variational", {"dim": c.dim, "trials": n}, worst, tol, worst / tol,
                   tol, worst <= tol)


@register("hilbert_additivity", "Hilbert distance is additive along chords (cross-ratio form)")
def _hilbert_additivity(c):
    n = _trials(c, 200)
    worst = 0.0
    for i in range(n):
        K = random_body(_seed(c.seed, i), c.dim)
        x = random_point(K, _seed(c.seed, i, 1))
        y = random_point(K, _seed(c.seed, i, 2))
        t = np.random.default_rng([c.seed, i]).uniform(0.05, 0.95)
        z = x + t * (y - x)
        dxy = float(hilbert_distance(K, x, y))
        res = abs(dxy - float(hilbert_distance(K, x, z)) - float(hilbert_distance(K, z, y)))
        res = max(res, abs(dxy - hilbert_distance_cross_ratio(K, x, y)))
        worst = max(worst, res)
    tol = cfgmod.TOL_METRIC
    return _report("hilbert_additivity", {"dim": c.dim, "trials": n}, worst, tol, worst / tol,
                   tol, worst <= tol)


@register("sandwich", "Macbeath regions sandwich Hilbert balls: M(x, s r) in B(x, r) in M(x, t r)")
def _sandwich(c):
    n = _trials(c, 20)
    radii = (1e-3, 0.1, 0.5, 1.0, 4.0, 8.0)
    lo_ratio, ok = math.inf, True
    for i in range(n):
        K = random_body(_seed(c.seed, i), c.dim)
        x = random_point(K, _seed(c.seed, i, 1))
        for r in radii:
            s, t = sandwich_estimate(K, x, r, c.ndir or 256)
            floor = math.tanh(r) / r
            lo_ratio = min(lo_ratio, s / floor)
            ok &= s <= t
    # the sampled fan only bounds the minimum from above, so sigma <= 1 is not tested here
    tol = 1e-9
    ok &= lo_ratio >= 1 - tol
    return _report("sandwich", {"dim": c.dim, "trials": n}, lo_ratio, 1.0, lo_ratio, tol, ok)


@register("finsler_sandwich", "the Hilbert unit ball lies between A(x) and 2 A(x)")
def _finsler_sandwich(c):
    n = _trials(c, 20)
    lo, hi = math.inf, 0.0
    for i in range(n):
        K = random_body(_seed(c.seed, i), c.dim)
        x = random_point(K, _seed(c.seed, i, 1))
        B = hilbert_finsler_ball(K, x, c.ndir or 256)
        q = B.radii / macbeath_radii(K, x, B.directions)
        lo, hi = min(lo, q.min()), max(hi, q.max())
    tol = 1e-12
    return _report("finsler_sandwich", {"dim": c.dim, "trials": n}, lo, hi, hi / 2, tol,
                   lo >= 1 - tol and hi <= 2 + tol)


@register("polar_sum_gauge", "gauge of (C + aD) polar is the gauge of C polar plus a times that of D polar")
def _polar_sum_gauge(c):
    n = _trials(c, 20)
    alpha = c.alpha or 0.3
    worst = 0.0
    for i in range(n):
        C = random_symmetric(_seed(c.seed, i, 1), c.dim)
        D = random_symmetric(_seed(c.seed, i, 2), c.dim)
        U = np.random.default_rng([c.seed, i]).standard_normal((50, c.dim))
        lhs = gauge(polar(minkowski_sum(C, D.scaled(alpha))), U)
        rhs = gauge(polar(C), U) + alpha * gauge(polar(D), U)
        worst = max(worst, float(np.max(np.abs(lhs - rhs) / np.maximum(1, np.abs(rhs)))))
    tol = cfgmod.TOL_EXACT
    return _report("polar_sum_gauge", {"dim": c.dim, "alpha": alpha, "trials": n}, worst, tol,
                   worst / tol, tol, worst <= tol)


@register("mink_stability_sharp", "polarity-expansion distortion 3 is attained on a line (Minkowski)")
def _mink_sharp(c):
    alpha = c.alpha or 0.2
    D = interval(-1.0, 1.0)
    C = interval(-alpha / 2, alpha / 2)
    Cp = expand_minkowski(C, D, alpha)
    p, x = np.array([1.0]), np.array([-1.0])
    lhs = float(MinkowskiMetric(polar(C)).distance(p, x))
    rhs = float(MinkowskiMetric(polar(Cp)).distance(p, x))
    ratio = rhs / lhs
    tol = cfgmod.TOL_EXACT
    return _report("mink_stability_sharp", {"dim": 1, "alpha": alpha}, lhs, rhs, ratio, tol,
                   abs(ratio - 3) <= tol)


@register("hilb_stability_sharp", "polarity-expansion distortion 3 is attained on a line (Hilbert)")
def _hilb_sharp(c):
    alpha = c.alpha or 0.3
    K = interval(-1.0, 1.0)
    a = math.tanh(alpha / 2)
    G = interval(-a, a)
    Gp = expand_hilbert(K, G, alpha)
    p, x = np.array([1.0]), np.array([-1.0])
    lhs = float(hilbert_distance(polar(G), p, x))
    rhs = float(hilbert_distance(polar(Gp), p, x))
    ratio = rhs / lhs
    tol = cfgmod.TOL_EXACT
    return _report("hilb_stability_sharp", {"dim": 1, "alpha": alpha}, lhs, rhs, ratio, tol,
                   abs(ratio - 3) <= tol)


# measures ---------------------------------------------------------------------------------

@register("funk_vol_duality", "Funk HT volume is polarity invariant: vol_K(G) = vol_{G polar}(K polar)")
def _funk_vol(c):
    n = _trials(c, 20)
    worst, se_max = 0.0, 0.0
    for i in range(n):
        G, K = random_pair(_seed(c.seed, i), 2)
        a = ht_volume_finsler(("funk", K), G, c.samples, _seed(c.seed, i, 1))
        b = ht_volume_finsler(("funk", polar(G)), polar(K), c.samples, _seed(c.seed, i, 2))
        z = abs(a.value - b.value) / (cfgmod.MC_SIGMAS * (a.std_error + b.std_error))
        worst = max(worst, z)
        se_max = max(se_max, a.std_error + b.std_error)
    return _report("funk_vol_duality", {"dim": 2, "trials": n, "samples": c.samples}, worst, 1.0,
                   worst, cfgmod.MC_SIGMAS, worst <= 1.0, se_max)


@register("funk_area_duality", "Funk HT area is polarity invariant")
def _funk_area(c):
    n = _trials(c, 20)
    worst = 0.0
    for i in range(n):
        G, K = random_pair(_seed(c.seed, i), 2)
        a = ht_area_finsler(("funk", K), G).value
        b = ht_area_finsler(("funk", polar(G)), polar(K)).value
        worst = max(worst, abs(a - b) / abs(b))
    tol = 1e-3
    return _report("funk_area_duality", {"dim": 2, "trials": n}, worst, tol, worst / tol, tol,
                   worst <= tol)


@register("hilb_measure_polarity_beta", "Hilbert HT measures of G in K and of K polar in G polar agree up to beta_d")
def _hilb_beta(c):
    n = _trials(c, 20)
    vmax, amax = 0.0, 0.0
    se = 0.0
    for i in range(n):
        G, K = random_pair(_seed(c.seed, i), 2)
        a = ht_volume_finsler(("hilbert", K), G, c.samples, _seed(c.seed, i, 1))
        b = ht_volume_finsler(("hilbert", polar(G)), polar(K), c.samples, _seed(c.seed, i, 2))
        vmax = max(vmax, a.value / b.value, b.value / a.value)
        se = max(se, a.std_error / a.value + b.std_error / b.value)
        aa = ht_area_finsler(("hilbert", K), G).value
        ab = ht_area_finsler(("hilbert", polar(G)), polar(K)).value
        amax = max(amax, aa / ab, ab / aa)
    slack = 1.05
    ok = vmax <= 1.5 * slack and amax <= 1.0 * slack
    return _report("hilb_measure_polarity_beta", {"dim": 2, "trials": n}, vmax, 1.5 * slack,
                   vmax / 1.5, slack, ok, se, max_area_ratio=amax)


@register("mink_measure_duality", "Minkowski HT measures: vol_D(C) = vol_{C polar}(D polar), same for area")
def _mink_duality(c):
    n = _trials(c, 20)
    worst = 0.0
    for i in range(n):
        C = random_symmetric(_seed(c.seed, i, 1), c.dim)
        D = random_symmetric(_seed(c.seed, i, 2), c.dim)
        Cp, Dp = polar(C), polar(D)
        for f in (ht_volume_minkowski, ht_area_minkowski):
            a, b = f(D, C).value, f(Cp, Dp).value
            worst = max(worst, abs(a - b) / abs(b))
    tol = cfgmod.TOL_DUAL
    return _report("mink_measure_duality", {"dim": c.dim, "trials": n}, worst, tol, worst / tol,
                   tol, worst <= tol)


@register("cauchy_area", "Cauchy-type projection formula for Minkowski HT area")
def _cauchy(c):
    n = _trials(c, 20)
    worst = 0.0
    for i in range(n):
        C = random_symmetric(_seed(c.seed, i, 1), c.dim)
        D = random_symmetric(_seed(c.seed, i, 2), c.dim)
        a = ht_area_minkowski(D, C).value
        b = ht_area_minkowski_cauchy(D, C).value
        worst = max(worst, abs(a - b) / abs(a))
    tol = cfgmod.TOL_DUAL
    return _report("cauchy_area", {"dim": c.dim, "trials": n}, worst, tol, worst / tol, tol,
                   worst <= tol)


@register("busemann_cube_halfspace", "Busemann area fraction of a coordinate cut of the cube is 1/(2d)")
def _busemann_cube(c):
    d = c.dim if c.dim in (2, 3) else 2
    D = cube(d)
    n = np.zeros(d)
    n[0] = 1.0
    mu, beta = relative_isoperimetry_sample(("minkowski", D, np.zeros(d), 1.0),
                                            Halfspace(n, 0.0), "busemann")
    target = 1 / (2 * d)
    tol = cfgmod.TOL_EXACT
    return _report("busemann_cube_halfspace", {"dim": d}, beta, target, beta / target, tol,
                   abs(beta - target) <= tol and abs(mu - 0.5) <= tol, mu=mu)


@register("jacobian_symmetry", "the projective polar map has det J_{x,y} = det J_{y,x}")
def _jacobian(c):
    n = _trials(c, 10_000)
    rng = np.random.default_rng([c.seed, 99])
    d = c.dim
    worst = 0.0
    for _ in range(n):
        x, y = rng.standard_normal((2, d))
        x *= 0.9 * rng.random() ** (1 / d) / np.linalg.norm(x)
        y *= 0.9 * rng.random() ** (1 / d) / np.linalg.norm(y)
        _, Jxy, dxy = projective_polar_map(x, y)
        _, Jyx, dyx = projective_polar_map(y, x)
        worst = max(worst, abs(dxy - dyx))
    tol = 1e-12
    return _report("jacobian_symmetry", {"dim": d, "trials": n}, worst, tol, worst / tol, tol,
                   worst <= tol)


@register("ball_growth", "small Hilbert balls have volume ~ r^d and area ~ r^(d-1)")
def _ball_growth(c):
    n = _trials(c, 5)
    radii = np.geomspace(0.05, 1.0, 8)
    sv, sa = [], []
    for i in range(n):
        K = random_body(_seed(c.seed, i), 2)
        x = random_point(K, _seed(c.seed, i, 1), 0.5)
        _, a, b = ball_growth_profile(("hilbert", K), x, radii, n_dir=c.ndir or 256)
        sv.append(a)
        sa.append(b)
    ok = all(1.9 <= s <= 2.1 for s in sv) and all(0.9 <= s <= 1.1 for s in sa)
    return _report("ball_growth", {"dim": 2, "trials": n}, min(sv), max(sv), max(sv) / 2, 0.1,
                   ok, slopes_vol=sv, slopes_area=sa)


# expansions ------------------------------------------------------------------------------

@register("expansion_fatness", "expansions are relatively fat: balls on their boundary keep a fixed volume fraction")
def _fatness(c):
    n = _trials(c, 5)
    alpha = c.alpha or 0.3
    vm, vh = math.inf, math.inf
    for i in range(n):
        C = random_body(_seed(c.seed, i, 1), 2)
        D = random_symmetric(_seed(c.seed, i, 2), 2)
        E = expand_minkowski(C, D, alpha)
        vm = min(vm, fatness_check(MinkowskiMetric(D), E, alpha, 0.1, 20, _seed(c.seed, i)).lhs)
        G, K = random_pair(_seed(c.seed, i, 3), 2)
        Eh = expand_hilbert(K, G, alpha, c.ndir or 360)
        vh = min(vh, fatness_check(HilbertMetric(K), Eh, alpha, 0.1, 10, _seed(c.seed, i)).lhs)
    floor = 2.0 ** -2 - 0.02
    return _report("expansion_fatness", {"dim": 2, "alpha": alpha, "trials": n}, vm, floor,
                   vm / floor, 0.02, vm >= floor and vh > 0.1, min_hilbert_fraction=vh)


@register("boundary_transfer", "every boundary point of G has a partner on the boundary of its expansion at distance alpha")
def _transfer(c):
    n = _trials(c, 10)
    alpha = c.alpha or 0.3
    worst, rates = 0.0, []
    for i in range(n):
        G, K = random_pair(_seed(c.seed, i), 2)
        r = boundary_transfer_check(K, G, alpha, 20, _seed(c.seed, i, 1))
        worst = max(worst, r.lhs)
        rates.append(r.extra["pass_rate"])
    tol = 1e-5
    return _report("boundary_transfer", {"dim": 2, "alpha": alpha, "probes": 20 * n}, worst, tol,
                   worst / tol, tol, worst <= tol, pass_rate=float(np.mean(rates)))


@register("complementary_chord", "through any interior point some chord is complementary to a given line")
def _chord(c):
    n = _trials(c, 100)
    worst = 0.0
    for i in range(n):
        rng = np.random.default_rng([c.seed, i, 5])
        K = random_body(_seed(c.seed, i), 2, (3, 20))
        x = random_point(K, _seed(c.seed, i, 1))
        th = rng.uniform(0, np.pi)
        nrm = np.array([math.cos(th), math.sin(th)])
        worst = max(worst, complementary_chord_2d(K, x, Halfspace(nrm, float(nrm @ x))).residual)
    tol = cfgmod.TOL_CHORD
    return _report("complementary_chord", {"dim": 2, "trials": n}, worst, tol, worst / tol, tol,
                   worst <= tol)


@register("rogers_shephard_union", "symmetrizations of a centered body grow its volume by at most binom(2d, d)")
def _rogers_shephard(c):
    n = _trials(c, 50)
    d = c.dim
    bound = math.comb(2 * d, d)
    worst = 0.0
    for i in range(n):
        C = random_body(_seed(c.seed, i), d)
        v = C.volume
        worst = max(worst, symmetrize(C, "union").volume / v, symmetrize(C, "difference").volume / v)
    return _report("rogers_shephard_union", {"dim": d, "trials": n}, worst, bound, worst / bound,
                   0.0, worst <= bound)


@register("core_cover_volume", "the symmetric core of a centered body keeps at least 2^-d of its volume")
def _core(c):
    n = _trials(c, 50)
    d = c.dim
    worst = math.inf
    for i in range(n):
        C = random_body(_seed(c.seed, i), d)
        C = C.translate(-centroid(C))
        worst = min(worst, symmetrize(C, "core").volume / C.volume)
    floor = 2.0 ** -d
    return _report("core_cover_volume", {"dim": d, "trials": n}, worst, floor, worst / floor,
                   0.0, worst >= floor)


def with_overrides(config: CheckConfig, **kw) -> CheckConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
