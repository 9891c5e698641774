"""Average out-degree of both constructions against their sqrt(n ln n) bounds.

    python3 scripts/degree_scaling.py --sizes 250 500 1000 2000 --dim 64 --seed 1

For each n this builds the set-cover and the randomized graph on the same
random sign points, checks the permutation criterion, and reports the
average degree divided by sqrt(n ln n).
"""

import argparse
import math
import time

from navgraph import (
    build_permutations,
    build_randomized,
    build_setcover,
    degree_stats,
    euclidean_oracle,
    gen_random_sign_points,
    verify_property,
)


def run(n, dim, seed):
    ps = gen_random_sign_points(n, dim, seed)
    pt = build_permutations(ps, euclidean_oracle(ps))
    scale = math.sqrt(n * math.log(n))
    out = []
    for name, build in (("setcover", lambda: build_setcover(pt)), ("randomized", lambda: build_randomized(pt, seed))):
        t0 = time.perf_counter()
        g, rep = build()
        ok = verify_property(g, pt)
        st = degree_stats(g)
        out.append((name, n, st.avg_degree, st.avg_degree / scale, st.max_out_degree, rep.m, ok, time.perf_counter() - t0))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[250, 500, 1000, 2000])
    ap.add_argument("--dim", type=int, default=64)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print(f"{'method':>10} {'n':>6} {'avg_deg':>9} {'/sqrt(n ln n)':>13} {'max_deg':>7} {'m':>5} {'nav':>4} {'sec':>6}")
    for n in args.sizes:
        for name, n_, avg, ratio, mx, m, ok, sec in run(n, args.dim, args.seed):
            print(f"{name:>10} {n_:>6} {avg:>9.1f} {ratio:>13.3f} {mx:>7} {m:>5} {'yes' if ok else 'NO':>4} {sec:>6.2f}")


if __name__ == "__main__":
    main()
