"""Success rate of Algorithm I with Golay local codes against error weight.

Weights are given as multiples of sigma0 * t * m, the number of errors the
bipartite threshold promises to correct.

    python3 scripts/golay_sweep.py --m 1000 --trials 200 --factors 0.8 1 2 4 8
"""

import argparse
import csv
import math
import sys

from tannercodes import thresholds as th
from tannercodes.experiments import SimConfig, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=1000)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--factors", type=float, nargs="+", default=[0.8, 1, 2, 4, 8, 16])
    args = ap.parse_args()

    sigma0 = th.sigma0_bipartite(23, 3).value
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["factor", "errors", "success_rate", "mean_iterations"])
    for f in args.factors:
        errors = math.floor(f * sigma0 * 3 * args.m)
        rep = simulate(SimConfig("golay23", 2, args.m, 3, args.seed, args.trials, errors=errors), args.jobs)
        w.writerow([f, errors, f"{rep['success_rate']:.4f}", f"{rep['mean_iterations']:.2f}"])


if __name__ == "__main__":
    main()
