"""Covering-number duality sweeps.

Each instance is compared on two sides:

* Hilbert: N_K(G, a) against N_{G polar}(K polar, a), with G inside K.
* Minkowski (translative): N_D(C, a) against N_{C polar}(D polar, a).

Rows are produced per (instance, target, alpha, seed); instances run in a
process pool and are reassembled in input order, so the output does not
depend on the number of workers.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

import numpy as np

from .config import ExperimentConfig, thread_cap
from .convex_core import interval, ngon, polar
from .cover_expand import (_target_measure, brute_force_cover_1d,
                           covering_estimate)
from .errors import InvalidParameter
from .instances import _seed, random_body, random_pair, random_symmetric
from .metrics import HilbertMetric, MinkowskiMetric

log = logging.getLogger(__name__)

SWEEP_COLUMNS = ["instance", "dim", "geometry", "target", "alpha", "seed",
                 "upper_a", "lower_a", "upper_b", "lower_b", "oracle_a", "oracle_b",
                 "ratio_ab", "ratio_ba", "ratio_upper", "clamped", "pass"]


def make_instance(geometry: str, dim: int, seed: int):
    """Return ((metric_a, target_a), (metric_b, target_b)) for one instance."""
    if geometry == "hilbert":
        G, K = random_pair(seed, dim)
        return (HilbertMetric(K), G), (HilbertMetric(polar(G)), polar(K))
    if geometry == "minkowski":
        C = random_body(_seed(seed, 1), dim)
        if dim == 1:
            w = float(np.random.default_rng([seed, 2]).uniform(0.3, 1.0))
            D = interval(-w, w)
        else:
            D = random_symmetric(_seed(seed, 2), dim)
        return (MinkowskiMetric(D), C), (MinkowskiMetric(polar(C)), polar(D))
    if geometry == "disks":
        # self-dual check: K the unit disk, G = r K, so G polar = K polar / r
        r = float(np.random.default_rng([seed, 3]).uniform(0.3, 0.7))
        K = ngon(48)
        G = K.scaled(r)
        return (HilbertMetric(K), G), (HilbertMetric(polar(G)), polar(K))
    raise InvalidParameter(f"unknown geometry {geometry!r}")


def _ratio(a: float, b: float) -> float:
    return a / b if b > 0 else math.inf


def _instance_rows(args):
    cfg, idx = args
    inst_seed = _seed(cfg.base_seed, idx)
    geometry = cfg.geometry
    (ma, ua), (mb, ub) = make_instance(geometry, cfg.dim, inst_seed)
    rows = []
    for target in cfg.targets:
        # the target measures do not depend on alpha or on the net seed
        meas_a = meas_b = None
        if cfg.dim > 1:
            meas_a = _target_measure(ma, ua, target, cfg.n_samples, inst_seed)
            meas_b = _target_measure(mb, ub, target, cfg.n_samples, inst_seed)
        for alpha in cfg.alphas:
            oracle_a = oracle_b = ""
            if cfg.dim == 1:
                oracle_a = brute_force_cover_1d(ma, ua, alpha, target)
                oracle_b = brute_force_cover_1d(mb, ub, alpha, target)
            ball_a = ball_b = None
            for s in cfg.seeds:
                net_seed = _seed(inst_seed, s)
                ea = covering_estimate(ma, ua, alpha, target, (net_seed,), cfg.n_samples,
                                       measure=meas_a, ball_measure=ball_a)
                eb = covering_estimate(mb, ub, alpha, target, (net_seed,), cfg.n_samples,
                                       measure=meas_b, ball_measure=ball_b)
                # the lower bound does not depend on the net seed: keep the first ball measure
                if cfg.dim > 1:
                    ball_a, ball_b = ea.ball_measure, eb.ball_measure
                r_ab = _ratio(ea.upper, eb.lower)
                r_ba = _ratio(eb.upper, ea.lower)
                r_up = max(_ratio(ea.upper, eb.upper), _ratio(eb.upper, ea.upper))
                ok = max(r_ab, r_ba) <= cfg.budget
                if cfg.dim == 1:
                    ok = ok and ea.upper == oracle_a and eb.upper == oracle_b
                rows.append({
                    "instance": idx, "dim": cfg.dim, "geometry": geometry, "target": target,
                    "alpha": float(alpha), "seed": s,
                    "upper_a": ea.upper, "lower_a": ea.lower,
                    "upper_b": eb.upper, "lower_b": eb.lower,
                    "oracle_a": oracle_a, "oracle_b": oracle_b,
                    "ratio_ab": r_ab, "ratio_ba": r_ba, "ratio_upper": r_up,
                    "clamped": bool(ea.clamped or eb.clamped), "pass": bool(ok),
                })
    return rows


def summarize(rows, dim: int, budget: float) -> dict:
    """Envelope over all rows: max two-sided ratio and c_hat = max^(1/d)."""
    if not rows:
        return {"rows": 0}
    worst = max(max(r["ratio_ab"], r["ratio_ba"]) for r in rows)
    per_alpha, per_target = {}, {}
    for r in rows:
        w = max(r["ratio_ab"], r["ratio_ba"])
        per_alpha[repr(r["alpha"])] = max(per_alpha.get(repr(r["alpha"]), 0.0), w)
        per_target[r["target"]] = max(per_target.get(r["target"], 0.0), w)
    ups = np.array([r["ratio_upper"] for r in rows])
    return {
        "rows": len(rows),
        "max_ratio": worst,
        "c_hat": worst ** (1.0 / dim),
        "max_ratio_upper": float(ups.max()),
        "median_ratio_upper": float(np.median(ups)),
        "max_ratio_by_alpha": per_alpha,
        "max_ratio_by_target": per_target,
        "clamp_rate": sum(r["clamped"] for r in rows) / len(rows),
        "budget": budget,
        "all_pass": all(r["pass"] for r in rows),
    }


def duality_experiment(cfg: ExperimentConfig, workers: int | None = None):
    """Run the sweep.  Returns (rows, summary)."""
    if cfg.geometry in ("hilbert", "disks") and not all(0 < a <= 1 for a in cfg.alphas):
        raise InvalidParameter("Hilbert sweeps need every alpha in (0, 1]")
    if any(a <= 0 for a in cfg.alphas):
        raise InvalidParameter("alpha must be positive")
    jobs = [(cfg, i) for i in range(cfg.n_instances)]
    workers = min(workers or thread_cap(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_instance_rows, jobs))
    else:
        chunks = [_instance_rows(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    summary = summarize(rows, cfg.dim, cfg.budget)
    log.info("sweep %s d=%d: max ratio %.4g, c_hat %.4g", cfg.geometry, cfg.dim,
             summary.get("max_ratio", float("nan")), summary.get("c_hat", float("nan")))
    return rows, summary


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_sweep(rows, summary: dict, cfg: ExperimentConfig, fmt: str = "csv") -> str:
    """Deterministic text for a sweep; the config is embedded in the output."""
    conf = {k: v for k, v in asdict(cfg).items() if k != "extra"}
    if fmt == "json":
        return json.dumps({"config": conf, "summary": summary, "rows": rows},
                          indent=2, sort_keys=True, default=list) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    buf.write("# config " + json.dumps(conf, sort_keys=True, default=list) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([_cell(r[c]) for c in SWEEP_COLUMNS])
    buf.write("# summary " + json.dumps(summary, sort_keys=True) + "\n")
    return buf.getvalue()


__all__ = ["SWEEP_COLUMNS", "duality_experiment", "make_instance", "render_sweep",
           "summarize"]
