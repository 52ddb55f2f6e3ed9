"""Algorithm II on Hamming-code hypergraphs: success rate against error fraction.

    python3 scripts/hypergraph_sweep.py --r 3 --l 3 --m 500 --fracs 0.001 0.005 0.01
"""

import argparse
import csv
import sys

from tannercodes.experiments import SimConfig, simulate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, default=3, help="Hamming code parameter, n = 2^r - 1")
    ap.add_argument("--l", type=int, default=3)
    ap.add_argument("--m", type=int, default=500)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--fracs", type=float, nargs="+", default=[0.001, 0.002, 0.005, 0.01, 0.02])
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["error_frac", "errors", "success_rate", "mean_list_size"])
    for frac in args.fracs:
        cfg = SimConfig(f"hamming({args.r})", args.l, args.m, 1, args.seed, args.trials,
                        error_frac=frac, s=args.s)
        rep = simulate(cfg, args.jobs)
        lists = sum(t["list_size"] for t in rep["trials"]) / len(rep["trials"])
        w.writerow([frac, rep["trials"][0]["errors"], f"{rep['success_rate']:.4f}", f"{lists:.2f}"])


if __name__ == "__main__":
    main()
