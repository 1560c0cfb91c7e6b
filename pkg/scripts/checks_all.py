#!/usr/bin/env python3
"""Run every registered check in 2D (and the dimension-generic ones in 1D and 3D)."""
import argparse
import sys

from hilbcover.checks import CheckConfig, list_checks, run_check
from hilbcover.report import emit_report

GENERIC = ("polar_involution", "funk_variational", "hilbert_additivity", "sandwich",
           "finsler_sandwich", "polar_sum_gauge", "mink_measure_duality", "cauchy_area",
           "jacobian_symmetry", "rogers_shephard_union", "core_cover_volume")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    a = p.parse_args()
    reports = [run_check(cid, CheckConfig(seed=a.seed)) for cid, _ in list_checks()]
    for d in (1, 3):
        reports += [run_check(cid, CheckConfig(seed=a.seed, dim=d)) for cid in GENERIC]
    text = emit_report(reports, a.out, a.format)
    if not a.out:
        sys.stdout.write(text)
    bad = [r.check_id for r in reports if not r.passed]
    print(f"{len(reports) - len(bad)}/{len(reports)} passed {bad or ''}", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
