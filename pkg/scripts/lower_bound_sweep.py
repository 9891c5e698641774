"""Certified edge lower bound on random sign vectors as n grows (d = n).

Prints one row per (n, seed) and optionally writes the rows as CSV:

    python3 scripts/lower_bound_sweep.py --sizes 256 512 1024 2048 --seeds 1 2 3 --csv lb.csv
"""

import argparse
import csv
import math
import time

from navgraph import calibrate_ch, gen_random_sign_points
from navgraph.lowerlab import lower_bound_lab, membership_probability

FIELDS = ["n", "d", "seed", "c_h", "min_hood", "mean_hood", "max_hood", "max_overlap",
          "sum_required", "certified_lb", "certified_avg_degree", "sqrt_n", "p_member", "seconds"]


def sweep(sizes, seeds, dim_ratio=1.0):
    for n in sizes:
        d = max(1, int(round(dim_ratio * n)))
        for seed in seeds:
            t0 = time.perf_counter()
            _, rep, _ = lower_bound_lab(gen_random_sign_points(n, d, seed))
            yield {
                "n": n,
                "d": d,
                "seed": seed,
                "c_h": round(rep.c_h, 6),
                "min_hood": rep.min_hood,
                "mean_hood": round(rep.mean_hood, 2),
                "max_hood": rep.max_hood,
                "max_overlap": rep.max_overlap,
                "sum_required": rep.sum_required,
                "certified_lb": rep.certified_lb,
                "certified_avg_degree": round(rep.certified_avg_degree, 3),
                "sqrt_n": round(math.sqrt(n), 2),
                "p_member": round(membership_probability(n, d, calibrate_ch(n)), 5),
                "seconds": round(time.perf_counter() - t0, 2),
            }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[256, 512, 1024, 2048])
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--dim-ratio", type=float, default=1.0, help="d = ratio * n")
    ap.add_argument("--csv")
    args = ap.parse_args()

    rows = []
    print(f"{'n':>6} {'seed':>4} {'hood min/mean/max':>20} {'max_ovl':>7} {'lb':>9} {'lb/n':>7}")
    for row in sweep(args.sizes, args.seeds, args.dim_ratio):
        rows.append(row)
        hood = f"{row['min_hood']}/{row['mean_hood']}/{row['max_hood']}"
        print(f"{row['n']:>6} {row['seed']:>4} {hood:>20} {row['max_overlap']:>7} "
              f"{row['certified_lb']:>9} {row['certified_avg_degree']:>7}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=FIELDS)
            w.writeheader()
            w.writerows(rows)


if __name__ == "__main__":
    main()
