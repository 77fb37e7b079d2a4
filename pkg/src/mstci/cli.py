"""Command-line entry point.

Exit status: 0 success, 1 usage error, 2 data error, 3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import bounds as B
from . import experiments as X
from .canon import generate_connected
from .errors import InvariantViolation, MstciError
from .graph import Graph, is_connected, parse_edge_spec, parse_graph6, read_graph6_file, to_graph6
from .solver import solve_mstci

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("MSTCI_JOBS", "1")))
    except ValueError:
        return 1


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _n_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if not 1 <= lo <= hi <= 9:
        raise argparse.ArgumentTypeError("vertex counts must lie in 1..9")
    return list(range(lo, hi + 1))


def _write(path: str, text: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------- inputs

def _single_graphs(args) -> list[Graph]:
    sources = [args.graph6 is not None, args.edges is not None, args.input is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --graph6, --edges (with -n), --input")
    if args.graph6 is not None:
        return [parse_graph6(args.graph6)]
    if args.edges is not None:
        if args.n is None:
            raise UsageError("--edges needs -n")
        return [parse_edge_spec(args.n, args.edges)]
    return read_graph6_file(args.input)


def _corpus(args) -> tuple[int, list[Graph]]:
    if args.input is not None:
        graphs = read_graph6_file(args.input)
        if not graphs:
            raise MstciError(f"{args.input}: no graphs")
        n = args.n if args.n is not None else graphs[0].n
    else:
        if args.n is None:
            raise UsageError("need -n or --input")
        n = args.n
        graphs = generate_connected(n)
    for i, g in enumerate(graphs, 1):
        if g.n != n:
            raise MstciError(f"graph {i} has {g.n} vertices, expected {n}")
        if not is_connected(g):
            raise MstciError(f"graph {i} ({to_graph6(g)}) is not connected")
    return n, graphs


def _check_out_dir(*paths) -> None:
    for p in paths:
        if p and not os.path.isdir(os.path.dirname(os.path.abspath(p))):
            raise UsageError(f"output directory for {p} does not exist")


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    graphs = _single_graphs(args)
    _check_out_dir(args.out)
    rows = []
    for g in graphs:
        res = solve_mstci(g, args.all_minimizers, not args.no_star_shortcut)
        tree = [list(g.edges[i]) for i in res.minimizer.tree_edges]
        print(f"{to_graph6(g)} n={g.n} m={g.m} cap={res.intersection_number} "
              f"tree={[tuple(e) for e in tree]} trees_enumerated={res.trees_enumerated} "
              f"star_shortcut={'yes' if res.used_star_shortcut else 'no'}")
        row = {
            "graph6": to_graph6(g), "n": g.n, "m": g.m, "cap": res.intersection_number,
            "minimizer": tree, "trees_enumerated": res.trees_enumerated,
            "used_star_shortcut": res.used_star_shortcut,
        }
        if res.all_minimizers is not None:
            row["all_minimizers"] = [[list(g.edges[i]) for i in t.tree_edges] for t in res.all_minimizers]
            print(f"  {len(res.all_minimizers)} optimal trees")
        rows.append(row)
    if args.out:
        _write(args.out, json.dumps(rows, indent=1) + "\n")
    return EXIT_OK


def cmd_bounds(args) -> int:
    _check_out_dir(args.out)
    rep = B.bounds_report(args.n, args.m)
    print(f"n={rep.n} m={rep.m} mu={rep.mu} l={_fmt(rep.l)} q={rep.q} r={rep.r} "
          f"l_bar={rep.l_bar} effective={B.effective_bound(rep.n, rep.m)}")
    if args.out:
        _write(args.out, json.dumps({
            "n": rep.n, "m": rep.m, "mu": rep.mu, "l_num": rep.l.numerator,
            "l_den": rep.l.denominator, "q": rep.q, "r": rep.r, "l_bar": rep.l_bar,
        }) + "\n")
    return EXIT_OK


def cmd_mu_regular(args) -> int:
    _check_out_dir(args.out)
    g = B.build_mu_regular(args.n, args.m)
    s = to_graph6(g)
    print(f"{s} edges={','.join(f'{u}-{v}' for u, v in g.edges)}")
    if args.out:
        _write(args.out, s + "\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    _check_out_dir(args.out)
    lines = [to_graph6(g) for n in args.n for g in generate_connected(n)]
    text = "".join(s + "\n" for s in lines)
    if args.out:
        _write(args.out, text)
        print(f"{len(lines)} graphs written to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_scan_bounds(args) -> int:
    _check_out_dir(args.out, args.agg_out)
    n, graphs = _corpus(args)
    t0 = time.time()
    records, agg = X.scan_bounds(n, graphs, jobs=args.jobs)
    strict = [r for r in records if r.mu > 0 and not r.l < r.intersection_number]
    conj = [r for r in records if r.l_bar > r.intersection_number]
    ratios = [r.r_G for r in records if r.r_G is not None]
    print(f"n={n} graphs={len(records)} time={time.time() - t0:.1f}s")
    if ratios:
        print(f"max r_G={_fmt(max(ratios))} ({float(max(ratios)):.6f})")
    print(f"strict bound violations={len(strict)} conjectured bound violations={len(conj)}")
    for a in agg:
        print(f"  m={a.m:3d} count={a.graph_count:5d} min={a.min_cap} max={a.max_cap} "
              f"mean={float(a.mean_cap):.3f} l={float(a.l):.3f} l_bar={a.l_bar}")
    if args.out:
        _write(args.out, X.scan_csv(records))
    if args.agg_out:
        _write(args.agg_out, X.aggregate_csv(agg))
    return EXIT_INVARIANT if strict else EXIT_OK


def cmd_scan_dominance(args) -> int:
    _check_out_dir(args.out)
    n, graphs = _corpus(args)
    t0 = time.time()
    recs = X.scan_successor_dominance(n, graphs, jobs=args.jobs)
    dom = [r for r in recs if r.dominant]
    print(f"n={n} graphs={len(recs)} dominant={len(dom)} time={time.time() - t0:.1f}s")
    for r in dom:
        print(f"  {r.graph6} m={r.m} successors={r.successor_count} cap={r.own_intersection} "
              f"successor_caps={sorted(set(r.successor_intersections))}")
    if args.out:
        _write(args.out, X.dominance_csv(recs))
    return EXIT_OK


def cmd_scan_maxdeg(args) -> int:
    _check_out_dir(args.out, args.hist_out, args.checkpoint)
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    n, graphs = _corpus(args)
    if args.checkpoint and not args.resume and os.path.exists(args.checkpoint):
        os.remove(args.checkpoint)
    t0 = time.time()
    scan = X.scan_maxdeg(n, graphs, jobs=args.jobs, checkpoint=args.checkpoint)
    print(f"n={n} graphs={len(scan.records)} max-deg(G) > max-deg(T) for all optimal T: "
          f"{scan.counterexamples} time={time.time() - t0:.1f}s")
    for m, c in scan.graphs_by_m.items():
        print(f"  m={m:3d} graphs={c:5d} counterexamples={scan.counterexamples_by_m[m]}")
    if args.out:
        _write(args.out, X.maxdeg_csv(scan))
    if args.hist_out:
        _write(args.hist_out, X.histogram_csv(scan))
    return EXIT_OK


def cmd_sample(args) -> int:
    _check_out_dir(args.out)
    t0 = time.time()
    res = X.random_sample_scan(args.n, args.samples, args.seed, jobs=args.jobs)
    rb = [r.r_bar_G for r in res.records if r.r_bar_G is not None]
    rr = [r.r_G for r in res.records if r.r_G is not None]
    print(f"n={args.n} samples={args.samples} seed={args.seed} violations={res.violations} "
          f"time={time.time() - t0:.1f}s")
    if rb:
        print(f"mean r_bar_G={float(sum(rb) / len(rb)):.6f} mean r_G={float(sum(rr) / len(rr)):.6f}")
    print(f"scheme: {res.metadata['scheme']}")
    if args.out:
        _write(args.out, X.scan_csv(res.records))
        _write(args.out + ".meta.json", json.dumps({**res.metadata, "violations": res.violations}, indent=1) + "\n")
    return EXIT_INVARIANT if res.violations else EXIT_OK


def cmd_verify(args) -> int:
    graphs = _single_graphs(args)
    _check_out_dir(args.out)
    failed = 0
    report = []
    for g in graphs:
        checks = X.verify_lemmas(g, max_trees=args.max_trees)
        bad = [c for c in checks if not c.passed]
        failed += bool(bad)
        print(f"{to_graph6(g)}: {'ok' if not bad else 'FAIL'}")
        for c in checks:
            if not c.passed or args.verbose:
                print(f"  {c.name}: {'pass' if c.passed else 'FAIL ' + c.detail}")
        report.append({"graph6": to_graph6(g), "checks": {c.name: c.passed for c in checks},
                       "failures": {c.name: c.detail for c in bad}})
    print(f"{len(graphs)} graphs, {failed} with failures")
    if args.out:
        _write(args.out, json.dumps(report, indent=1) + "\n")
    return EXIT_INVARIANT if failed else EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mstci", description="Exact MSTCI solver, bounds and small-graph experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def single_input(sp):
        sp.add_argument("--graph6", help="inline graph6 string")
        sp.add_argument("--edges", help='inline edge list "0-1,1-2,..." (needs -n)')
        sp.add_argument("-n", type=int, help="vertex count for --edges")
        sp.add_argument("--input", help="graph6 file, one graph per line")
        sp.add_argument("--out")

    def corpus_input(sp):
        sp.add_argument("-n", type=int, help="vertex count; generates the corpus when --input is absent")
        sp.add_argument("--input", help="graph6 file of connected n-vertex graphs")
        sp.add_argument("--jobs", type=_positive, default=_default_jobs())
        sp.add_argument("--out")

    sp = sub.add_parser("solve", help="exact intersection number of one or more graphs")
    single_input(sp)
    sp.add_argument("--all-minimizers", action="store_true")
    sp.add_argument("--no-star-shortcut", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bounds", help="l and l_bar for given n, m")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("mu-regular", help="construct a mu-regular graph")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_mu_regular)

    sp = sub.add_parser("gen", help="connected graphs up to isomorphism, as graph6")
    sp.add_argument("-n", type=_n_range, required=True, help="count or range a..b")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("scan-bounds", help="per-graph bounds and intersection numbers")
    corpus_input(sp)
    sp.add_argument("--agg-out", help="per-m aggregate CSV")
    sp.set_defaults(func=cmd_scan_bounds)

    sp = sub.add_parser("scan-dominance", help="graphs whose intersection number beats every successor")
    corpus_input(sp)
    sp.set_defaults(func=cmd_scan_dominance)

    sp = sub.add_parser("scan-maxdeg", help="graphs with no optimal tree reaching max-deg(G)")
    corpus_input(sp)
    sp.add_argument("--hist-out", help="per-m histogram CSV")
    sp.add_argument("--checkpoint", help="append-only progress file")
    sp.add_argument("--resume", action="store_true", help="reuse results from --checkpoint")
    sp.set_defaults(func=cmd_scan_maxdeg)

    sp = sub.add_parser("sample", help="random connected graphs checked against l_bar")
    sp.add_argument("-n", type=int, default=9)
    sp.add_argument("--samples", type=_positive, default=50)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--jobs", type=_positive, default=_default_jobs())
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("verify", help="per-graph lemma checks; exit 3 on any failure")
    single_input(sp)
    sp.add_argument("--max-trees", type=_positive, default=2000)
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mstci: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"mstci: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (MstciError, OSError) as exc:
        print(f"mstci: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
