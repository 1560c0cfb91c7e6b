#!/usr/bin/env python3
"""Volume and area of small Hilbert balls against the radius (data only, no plots)."""
import argparse
import csv
import sys

import numpy as np

from hilbcover.instances import random_body, random_point
from hilbcover.measures import ball_growth_profile


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bodies", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ndir", type=int, default=256)
    a = p.parse_args()
    radii = np.geomspace(0.05, 1.0, 12)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["body", "r", "volume", "area", "slope_volume", "slope_area"])
    for i in range(a.bodies):
        K = random_body(a.seed + i, 2)
        x = random_point(K, a.seed + i, 0.5)
        rows, sv, sa = ball_growth_profile(("hilbert", K), x, radii, n_dir=a.ndir)
        for r, v, ar in rows:
            w.writerow([i, repr(r), repr(v), repr(ar), repr(sv), repr(sa)])


if __name__ == "__main__":
    main()
