"""Command-line front end.

    hilbcover body cube --dim 3
    hilbcover dist cube 0,0 0.5,0.2
    hilbcover ball random_hull:10,seed=3 0,0 --alpha 0.5
    hilbcover measure cube ngon:8,0.5 --kind volume --samples 20000
    hilbcover cover cube ngon:6,0.5 --alpha 0.2 --target boundary
    hilbcover check mink_stability_sharp --alpha 0.2
    hilbcover sweep --geometry hilbert --dim 2 --out sweep.csv
    hilbcover list-checks
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import checks as checkmod
from .config import DEFAULT_SAMPLES, ExperimentConfig
from .convex_core import parse_body_spec
from .errors import GeometryError, UnknownCheck
from .report import emit_report


def _point(text: str, dim: int) -> np.ndarray:
    p = np.array([float(t) for t in text.split(",")])
    if p.shape != (dim,):
        raise GeometryError(f"point {text!r} does not have {dim} coordinates")
    return p


def _metric(kind: str, K):
    from .metrics import FunkMetric, HilbertMetric, MinkowskiMetric
    return {"hilbert": HilbertMetric, "funk": FunkMetric, "minkowski": MinkowskiMetric}[kind](K)


def _dump(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    return str(o)


def cmd_body(a):
    K = parse_body_spec(a.spec, a.dim)
    d = json.loads(K.to_json())
    d.update(volume=K.volume, boundary_area=K.boundary_area, symmetric=K.centrally_symmetric,
             origin_interior=K.contains_origin_interior, scale=K.scale)
    _dump(d, a.out)
    return 0


def cmd_dist(a):
    K = parse_body_spec(a.spec, a.dim)
    x, y = _point(a.x, K.dim), _point(a.y, K.dim)
    _dump({"kind": a.kind, "x": x, "y": y,
           "distance": float(_metric(a.kind, K).distance(x, y))}, a.out)
    return 0


def cmd_ball(a):
    from .metrics import funk_finsler_ball, hilbert_ball, hilbert_finsler_ball
    K = parse_body_spec(a.spec, a.dim)
    x = _point(a.x, K.dim)
    if a.kind == "hilbert":
        B = hilbert_ball(K, x, a.alpha or 1.0, a.ndir)
    elif a.kind == "hilbert-finsler":
        B = hilbert_finsler_ball(K, x, a.ndir)
    else:
        B = funk_finsler_ball(K, x, a.ndir)
    _dump({"kind": a.kind, "center": x, "radius": a.alpha or 1.0, "points": B.points}, a.out)
    return 0


def cmd_measure(a):
    from .measures import (ht_area_finsler, ht_area_minkowski, ht_volume_finsler,
                           ht_volume_minkowski)
    K = parse_body_spec(a.spec, a.dim)
    U = parse_body_spec(a.region, a.dim)
    if a.geometry == "minkowski":
        est = (ht_volume_minkowski if a.kind == "volume" else ht_area_minkowski)(K, U)
    elif a.kind == "volume":
        est = ht_volume_finsler((a.geometry, K), U, a.samples, a.seed)
    else:
        est = ht_area_finsler((a.geometry, K), U)
    _dump({"geometry": a.geometry, "kind": a.kind, "value": est.value,
           "std_error": est.std_error, "method": est.method, "seed": a.seed}, a.out)
    return 0


def cmd_cover(a):
    from .cover_expand import covering_estimate
    K = parse_body_spec(a.spec, a.dim)
    G = parse_body_spec(a.region, a.dim)
    est = covering_estimate(_metric(a.geometry, K), G, a.alpha or 0.2, a.target,
                            tuple(range(a.seed, a.seed + 5)), a.samples)
    _dump(est.to_dict(), a.out)
    return 0


def cmd_check(a):
    ids = [c for c, _ in checkmod.list_checks()] if a.ids == ["all"] else a.ids
    cfg = checkmod.CheckConfig(seed=a.seed, dim=a.dim, alpha=a.alpha, samples=a.samples,
                               ndir=a.ndir, trials=a.trials)
    reports = [checkmod.run_check(i, cfg) for i in ids]
    text = emit_report(reports, a.out, a.format, a.timing)
    if not a.out:
        sys.stdout.write(text)
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check_id}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_sweep(a):
    from .harness import duality_experiment, render_sweep
    alphas = tuple(a.alpha) if a.alpha else ExperimentConfig.alphas
    cfg = ExperimentConfig(dim=a.dim, geometry=a.geometry, n_instances=a.instances,
                           alphas=alphas, seeds=tuple(range(a.n_seeds)), base_seed=a.seed,
                           n_samples=a.samples, n_dir=a.ndir, budget=a.budget,
                           targets=tuple(a.targets))
    rows, summary = duality_experiment(cfg)
    text = render_sweep(rows, summary, cfg, a.format)
    if a.out:
        with open(a.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"max ratio {summary['max_ratio']:.4g}  c_hat {summary['c_hat']:.4g}  "
          f"clamp rate {summary['clamp_rate']:.3g}", file=sys.stderr)
    return 0 if summary["all_pass"] else 1


def cmd_list(a):
    for cid, anchor in checkmod.list_checks():
        print(f"{cid}\t{anchor}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dim", type=int, default=2)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--ndir", type=int, default=None)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hilbcover", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("body", parents=[common], help="parse or generate a body")
    s.add_argument("spec")
    s.set_defaults(fn=cmd_body)

    s = sub.add_parser("dist", parents=[common], help="distance between two points")
    s.add_argument("spec")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--kind", choices=("hilbert", "funk", "minkowski"), default="hilbert")
    s.set_defaults(fn=cmd_dist)

    s = sub.add_parser("ball", parents=[common], help="metric or Finsler ball about a point")
    s.add_argument("spec")
    s.add_argument("x")
    s.add_argument("--alpha", type=float, default=None, help="ball radius")
    s.add_argument("--kind", choices=("hilbert", "hilbert-finsler", "funk-finsler"),
                   default="hilbert")
    s.set_defaults(fn=cmd_ball)

    s = sub.add_parser("measure", parents=[common], help="HT volume or area of a region")
    s.add_argument("spec", help="ambient body K (or unit ball D for minkowski)")
    s.add_argument("region")
    s.add_argument("--geometry", choices=("hilbert", "funk", "minkowski"), default="hilbert")
    s.add_argument("--kind", choices=("volume", "area"), default="volume")
    s.set_defaults(fn=cmd_measure)

    s = sub.add_parser("cover", parents=[common], help="covering number bracket")
    s.add_argument("spec", help="ambient body K (or unit ball D for minkowski)")
    s.add_argument("region")
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--geometry", choices=("hilbert", "minkowski"), default="hilbert")
    s.add_argument("--target", choices=("body", "boundary"), default="body")
    s.set_defaults(fn=cmd_cover)

    s = sub.add_parser("check", parents=[common], help="run named checks ('all' for every one)")
    s.add_argument("ids", nargs="+")
    s.add_argument("--alpha", type=float, default=None)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--timing", action="store_true", help="include runtime_ms in the report")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("sweep", parents=[common], help="covering duality experiment")
    s.add_argument("--geometry", choices=("hilbert", "minkowski", "disks"), default="hilbert")
    s.add_argument("--alpha", type=float, action="append", default=None)
    s.add_argument("--instances", type=int, default=10)
    s.add_argument("--n-seeds", type=int, default=5)
    s.add_argument("--budget", type=float, default=64.0)
    s.add_argument("--targets", nargs="+", choices=("body", "boundary"),
                   default=["body", "boundary"])
    s.set_defaults(fn=cmd_sweep)

    s = sub.add_parser("list-checks", help="print check ids with their anchors")
    s.set_defaults(fn=cmd_list)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.fn(args)
    except UnknownCheck as exc:
        print(f"error: unknown check {exc.args[0]!r}", file=sys.stderr)
        return 2
    except GeometryError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
