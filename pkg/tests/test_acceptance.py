"""Acceptance criteria 1-15.  Each test records one PASS/FAIL line (printed in the
terminal summary) and pins its tolerance and time limit."""
import hashlib
import math
import time

import pytest

from hilbcover.checks import CheckConfig, run_check
from hilbcover.cli import main
from hilbcover.config import ExperimentConfig
from hilbcover.harness import duality_experiment

from conftest import ACCEPTANCE_LINES


def record(n, title, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} | {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t0


def test_01_sharp_distortion_minkowski():
    tol, limit = 1e-9, 1.0
    worst, total = 0.0, 0.0
    for alpha in (0.1, 0.2, 0.5):
        r, dt = timed(run_check, "mink_stability_sharp", CheckConfig(alpha=alpha))
        worst = max(worst, abs(r.ratio - 3.0))
        total = max(total, dt)
    record(1, "Minkowski distortion 3 on a line", worst <= tol and total < limit,
           f"max |ratio-3|={worst:.2e} (tol {tol}), slowest {total:.3f}s (< {limit}s)")


def test_02_sharp_distortion_hilbert():
    tol, limit = 1e-9, 1.0
    worst, total = 0.0, 0.0
    for alpha in (0.1, 0.3, 0.5):
        r, dt = timed(run_check, "hilb_stability_sharp", CheckConfig(alpha=alpha))
        worst = max(worst, abs(r.ratio - 3.0))
        total = max(total, dt)
    record(2, "Hilbert distortion 3 on a line", worst <= tol and total < limit,
           f"max |ratio-3|={worst:.2e} (tol {tol}), slowest {total:.3f}s (< {limit}s)")


def test_03_funk_measure_duality():
    limit = 120.0
    t0 = time.perf_counter()
    vol = run_check("funk_vol_duality", CheckConfig(trials=20, samples=20_000))
    area = run_check("funk_area_duality", CheckConfig(trials=20))
    dt = time.perf_counter() - t0
    ok = vol.passed and vol.tolerance == 3.0 and area.passed and area.tolerance == 1e-3
    record(3, "Funk HT volume/area polarity", ok and dt < limit,
           f"max |diff|/(3 se)={vol.lhs:.3f} (<= 1), area rel err={area.lhs:.2e} (tol 1e-3), "
           f"{dt:.1f}s (< {limit}s)")


def test_04_hilbert_polarity_band():
    limit = 120.0
    r, dt = timed(run_check, "hilb_measure_polarity_beta", CheckConfig(trials=20, samples=20_000))
    vband, aband = 1.5 * 1.05, 1.0 * 1.05
    amax = r.extra["max_area_ratio"]
    ok = r.lhs <= vband and amax <= aband
    record(4, "Hilbert HT polarity within beta_2 = 3/2, beta_1 = 1", ok and dt < limit,
           f"max volume ratio={r.lhs:.4f} (<= {vband}), max area ratio={amax:.6f} (<= {aband}), "
           f"{dt:.1f}s (< {limit}s)")


def test_05_minkowski_ht_duality():
    tol, limit = 1e-6, 10.0
    r, dt = timed(run_check, "mink_measure_duality", CheckConfig(dim=2, trials=20))
    record(5, "Minkowski HT volume/area duality", r.lhs <= tol and dt < limit,
           f"max rel err={r.lhs:.2e} (tol {tol}), {dt:.2f}s (< {limit}s)")


def test_06_cube_halfspace_busemann():
    tol = 1e-9
    r2 = run_check("busemann_cube_halfspace", CheckConfig(dim=2))
    r3 = run_check("busemann_cube_halfspace", CheckConfig(dim=3))
    e2, e3 = abs(r2.lhs - 0.25), abs(r3.lhs - 1 / 6)
    record(6, "Busemann beta of cube halfspace = 1/(2d)", e2 <= tol and e3 <= tol,
           f"2D beta={r2.lhs!r}, 3D beta={r3.lhs!r} (tol {tol})")


def test_07_jacobian_symmetry():
    tol = 1e-12
    worst = max(run_check("jacobian_symmetry", CheckConfig(dim=d, trials=10_000)).lhs
                for d in (2, 3))
    record(7, "det J_xy = det J_yx on 10^4 pairs", worst <= tol,
           f"max residual={worst:.2e} (tol {tol})")


def test_08_projection_section_duality():
    tol = 1e-6
    r = run_check("slice_project_dual", CheckConfig(trials=100))
    record(8, "section/projection polarity on 100 (K, E) in 2D/3D", r.lhs <= tol,
           f"max Hausdorff residual={r.lhs:.2e} (tol {tol})")


def test_09_ball_growth():
    limit = 120.0
    r, dt = timed(run_check, "ball_growth", CheckConfig(trials=5))
    sv, sa = r.extra["slopes_vol"], r.extra["slopes_area"]
    ok = all(1.9 <= s <= 2.1 for s in sv) and all(0.9 <= s <= 1.1 for s in sa)
    record(9, "small Hilbert balls: volume ~ r^2, area ~ r", ok and dt < limit,
           f"volume slopes [{min(sv):.3f}, {max(sv):.3f}] in [1.9, 2.1], area slopes "
           f"[{min(sa):.3f}, {max(sa):.3f}] in [0.9, 1.1], {dt:.1f}s (< {limit}s)")


def test_10_expansion_fatness():
    r = run_check("expansion_fatness", CheckConfig(trials=5))
    floor = 2.0 ** -2 - 0.02
    hil = r.extra["min_hilbert_fraction"]
    record(10, "expansions are relatively fat", r.lhs >= floor and hil > 0.1,
           f"Minkowski min fraction={r.lhs:.4f} (>= {floor}), Hilbert min fraction={hil:.4f} (> 0.1)")


def test_11_boundary_transfer():
    tol = 1e-5
    r = run_check("boundary_transfer", CheckConfig(trials=10))
    ok = r.extra["pass_rate"] == 1.0 and r.lhs <= tol and r.inputs["probes"] == 200
    record(11, "boundary transfer attains distance alpha", ok,
           f"pass rate={r.extra['pass_rate']:.3f} over {r.inputs['probes']} probes, "
           f"max err={r.lhs:.2e} (tol {tol})")


def test_12_complementary_chord():
    tol = 1e-6
    r = run_check("complementary_chord", CheckConfig(trials=100))
    record(12, "complementary chords on 100 random triples", r.lhs <= tol,
           f"max incidence residual={r.lhs:.2e} (tol {tol})")


@pytest.fixture(scope="module")
def duality_suite():
    t0 = time.perf_counter()
    out = {}
    for geometry in ("hilbert", "minkowski"):
        cfg = ExperimentConfig(dim=2, geometry=geometry, n_instances=10,
                               alphas=(0.1, 0.2, 0.5, 1.0), seeds=(0, 1, 2, 3, 4), budget=64.0)
        out[geometry] = duality_experiment(cfg)
    for geometry in ("hilbert", "minkowski"):
        cfg = ExperimentConfig(dim=1, geometry=geometry, n_instances=10,
                               alphas=(0.05, 0.1, 0.2, 0.5, 1.0), seeds=(0, 1, 2))
        out[geometry + "_1d"] = duality_experiment(cfg)
    return out, time.perf_counter() - t0


def test_13_covering_duality_envelope(duality_suite):
    out, dt = duality_suite
    budget, limit = 64.0, 600.0
    parts, ok = [], dt < limit
    for g in ("hilbert", "minkowski"):
        rows, s = out[g]
        n_ok = len(rows) == 10 * 4 * 5 * 2 and all(
            max(r["ratio_ab"], r["ratio_ba"]) <= budget for r in rows)
        ok &= n_ok
        parts.append(f"2D {g}: {len(rows)} rows, max ratio {s['max_ratio']:.3g} "
                     f"(budget {budget}), c_hat {s['c_hat']:.3g}, clamp rate {s['clamp_rate']:.2f}")
        print(f"  {g} per-alpha maxima: {s['max_ratio_by_alpha']}; per-target: "
              f"{s['max_ratio_by_target']}; upper-count ratio max {s['max_ratio_upper']:.3g}, "
              f"median {s['median_ratio_upper']:.3g}")
    for g in ("hilbert_1d", "minkowski_1d"):
        rows, s = out[g]
        exact = all(r["upper_a"] == r["oracle_a"] and r["upper_b"] == r["oracle_b"] for r in rows)
        ok &= exact
        parts.append(f"1D {g[:-3]}: {len(rows)} rows match oracle={exact}, max ratio {s['max_ratio']:.3g}")
    record(13, "covering duality envelope", ok, "; ".join(parts) + f"; {dt:.0f}s (< {limit}s)")


def test_14_rogers_shephard():
    r = run_check("rogers_shephard_union", CheckConfig(dim=2, trials=50))
    record(14, "symmetrizations within binom(4, 2) = 6", r.passed and r.rhs == math.comb(4, 2),
           f"max volume ratio={r.lhs:.4f} (<= {r.rhs:g}), exact")


def test_15_determinism(tmp_path):
    digests = []
    for geometry in ("hilbert", "minkowski"):
        args = ["sweep", "--geometry", geometry, "--dim", "2", "--instances", "3", "--alpha",
                "0.2", "--alpha", "0.5", "--n-seeds", "2", "--seed", "11", "--samples", "5000"]
        runs = []
        for k in range(2):
            p = tmp_path / f"{geometry}{k}.csv"
            main(args + ["--out", str(p)])
            runs.append(hashlib.sha256(p.read_bytes()).hexdigest())
        digests.append(runs)
    ok = all(a == b for a, b in digests)
    record(15, "repeated sweep is byte-identical", ok,
           "; ".join(f"sha256 {a[:16]} vs {b[:16]}" for a, b in digests))
