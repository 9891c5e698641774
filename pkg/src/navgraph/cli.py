"""Command-line entry point: ``navgraph <subcommand> ...``.

Exit codes: 0 success, 2 usage or invalid input, 3 I/O failure,
4 the command ran but the graph failed verification.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .construct import build_knn_baseline, build_randomized, build_setcover
from .errors import NavGraphError
from .graph import DirectedGraph, degree_stats, greedy_search
from .lowerlab import build_hoods, calibrate_ch, hub_degree_audit, lower_bound_lab
from .model import euclidean_oracle, gen_hub_instance, gen_random_sign_points
from .parallel import resolve_threads
from .permute import build_permutations
from .verify import VerifyReport, audit_claim5, verify_exhaustive, verify_property

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FAILED = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _m_arg(value):
    if value == "auto":
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {value!r}")


def _emit(obj, path=None):
    text = formats.dumps_json(obj)
    if path:
        formats.ensure_parent(path)
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    ps = formats.read_points(args.points)
    return ps, euclidean_oracle(ps)


def cmd_gen(args):
    if args.dist == "sign":
        if args.n is None or args.d is None:
            raise UsageError("--dist sign needs -n and -d")
        if args.n < 1 or args.d < 1:
            raise UsageError("-n and -d must be >= 1")
        ps = gen_random_sign_points(args.n, args.d, args.seed)
    else:
        if args.n is None or args.n < 2:
            raise UsageError("--dist hub needs -n >= 2")
        ps = gen_hub_instance(args.n)
    formats.ensure_parent(args.output)
    formats.write_points(ps, args.output)
    return EXIT_OK


def cmd_permute(args):
    ps, oracle = _load(args)
    pt = build_permutations(ps, oracle)
    formats.ensure_parent(args.output)
    formats.write_perm(pt, args.output)
    return EXIT_OK


def cmd_build(args):
    ps, oracle = _load(args)
    pt = build_permutations(ps, oracle)
    if args.method == "randomized":
        g, report = build_randomized(pt, args.seed, args.m)
        payload = report.to_dict()
    elif args.method == "setcover":
        g, report = build_setcover(pt, args.m)
        payload = report.to_dict()
    else:
        if args.k is None:
            raise UsageError("--method knn needs -k")
        g = build_knn_baseline(pt, args.k)
        stats = degree_stats(g)
        payload = {"method": "knn", "n": g.n, "k": args.k, "edge_count": stats.edge_count, "avg_degree": stats.avg_degree}
    formats.ensure_parent(args.output)
    formats.write_adj(g, args.output)
    _emit(payload, args.report)
    return EXIT_OK


def _load_graph(args, n):
    g = formats.read_adj(args.graph)
    if g.n != n:
        raise UsageError(f"graph has {g.n} nodes but point file has {n}")
    return g


def cmd_search(args):
    ps, oracle = _load(args)
    g = _load_graph(args, ps.n)
    for name, v in (("start", args.start), ("target", args.target)):
        if not 0 <= v < ps.n:
            raise UsageError(f"--{name} {v} outside [0, {ps.n})")
    trace = greedy_search(g, ps, oracle, args.start, ps.data[args.target])
    out = trace.to_dict()
    out["target"] = args.target
    out["success"] = trace.terminal == args.target
    _emit(out)
    return EXIT_OK


def cmd_verify(args):
    ps, oracle = _load(args)
    g = _load_graph(args, ps.n)
    report = VerifyReport()
    if args.mode in ("property", "both"):
        report.property_holds = verify_property(g, build_permutations(ps, oracle), threads=args.threads)
    if args.mode in ("exhaustive", "both"):
        ok, moves, first = verify_exhaustive(g, ps, oracle, threads=args.threads)
        report.exhaustive_ok, report.max_moves, report.first_failure = ok, moves, first
    if args.claim5:
        c_h = args.c_h if args.c_h is not None else calibrate_ch(ps.n)
        report.claim5_ok = audit_claim5(g, build_hoods(ps, c_h))
    _emit(report.to_dict(), args.report)
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_lblab(args):
    if args.points:
        ps = formats.read_points(args.points)
    elif args.n is not None and args.d is not None:
        if args.n < 3 or args.d < 1:
            raise UsageError("need -n >= 3 and -d >= 1")
        ps = gen_random_sign_points(args.n, args.d, args.seed)
    else:
        raise UsageError("give a point file (-p) or -n/-d/--seed")
    _, report, hist = lower_bound_lab(ps, args.c_h)
    out = report.to_dict()
    if not args.points:
        out["seed"] = args.seed
    _emit(out, args.report)
    if args.hist:
        formats.ensure_parent(args.hist)
        formats.write_histogram_csv(hist, args.hist)
    return EXIT_OK


def cmd_worstcase(args):
    if args.n < 2:
        raise UsageError("-n must be >= 2")
    ps = gen_hub_instance(args.n)
    oracle = euclidean_oracle(ps)
    g = DirectedGraph.complete(args.n)
    navigable, moves, _ = verify_exhaustive(g, ps, oracle, threads=args.threads)
    audit = navigable and hub_degree_audit(ps, g)
    degree = int(g.out_degrees()[args.n - 1])
    if args.format == "text":
        print(f"{'PASS' if audit else 'FAIL'} n={args.n} hub={args.n - 1} hub_out_degree={degree}")
    else:
        _emit({"n": args.n, "hub": args.n - 1, "hub_out_degree": degree, "navigable": navigable, "audit_pass": audit})
    return EXIT_OK if audit else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="navgraph", description=__doc__.splitlines()[0])
    p.add_argument("--threads", default="auto", help="worker threads or 'auto' (env NAVGRAPH_THREADS overrides)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="generate a point set")
    s.add_argument("--dist", choices=("sign", "hub"), required=True)
    s.add_argument("-n", type=int)
    s.add_argument("-d", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("permute", help="dump distance-based permutations (.perm)")
    s.add_argument("-p", "-i", "--points", required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_permute)

    s = sub.add_parser("build", help="construct a navigable graph")
    s.add_argument("--method", choices=("randomized", "setcover", "knn"), required=True)
    s.add_argument("-p", "-i", "--points", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--report", help="JSON build report path (default: stdout)")
    s.add_argument("-m", type=_m_arg, default="auto")
    s.add_argument("-k", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("search", help="greedy search between two nodes")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-p", "--points", required=True)
    s.add_argument("--start", type=int, required=True)
    s.add_argument("--target", type=int, required=True)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify", help="check navigability")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-p", "--points", required=True)
    s.add_argument("--mode", choices=("property", "exhaustive", "both"), default="both")
    s.add_argument("--claim5", action="store_true", help="also audit within-neighborhood edges (sign points)")
    s.add_argument("--c-h", type=float)
    s.add_argument("--report")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("lb-lab", help="neighborhood statistics and certified edge lower bound")
    s.add_argument("-p", "--points")
    s.add_argument("-n", type=int)
    s.add_argument("-d", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--c-h", type=float)
    s.add_argument("--report", help="JSON report path (default: stdout)")
    s.add_argument("--hist", help="CSV overlap histogram path")
    s.set_defaults(func=cmd_lblab)

    s = sub.add_parser("worstcase", help="max-degree hub instance audit")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_worstcase)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.threads = resolve_threads(args.threads)
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"navgraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, formats.FormatError) as exc:
        print(f"navgraph {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NavGraphError, ValueError) as exc:
        print(f"navgraph {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
