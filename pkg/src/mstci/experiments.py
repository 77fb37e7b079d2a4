"""Exhaustive and sampled scans over small connected graphs.

Every scan is a pure function of its inputs. Per-graph work fans out over a
process pool when ``jobs > 1``; results are always re-sorted before they are
returned, so output never depends on the worker count.
"""

from __future__ import annotations

import csv
import io
import math
import os
import random
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .bounds import is_mu_regular, lower_bound_bar, lower_bound_l
from .canon import CanonicalKey, canonical_key
from .errors import NotConnected
from .graph import (
    Graph,
    from_edge_list,
    is_connected,
    max_deg,
    parse_graph6,
    successors,
    to_graph6,
    universal_vertex,
)
from .solver import maxdeg_check, solve_mstci
from .trees import (
    bonds,
    enumerate_spanning_trees,
    fundamental_cycles,
    intersection_count,
    non_redundant_bond_set,
)


# ---------------------------------------------------------------- records

@dataclass(frozen=True)
class ScanRecord:
    graph6: str
    n: int
    m: int
    mu: int
    intersection_number: int
    has_universal_vertex: bool
    is_mu_regular: bool
    max_deg_g: int
    exists_minimizer_with_max_deg: bool
    l: Fraction
    l_bar: int

    @property
    def r_G(self) -> Fraction | None:
        return self.l / self.intersection_number if self.intersection_number else None

    @property
    def r_bar_G(self) -> Fraction | None:
        return Fraction(self.l_bar, self.intersection_number) if self.intersection_number else None


@dataclass(frozen=True)
class DominanceRecord:
    graph6: str
    m: int
    successor_count: int
    own_intersection: int
    successor_intersections: tuple[int, ...]

    @property
    def dominant(self) -> bool:
        s = self.successor_intersections
        return bool(s) and self.own_intersection > max(s)


@dataclass(frozen=True)
class AggregateRow:
    n: int
    m: int
    graph_count: int
    min_cap: int
    max_cap: int
    mean_cap: Fraction
    l: Fraction
    l_bar: int
    r_min: Fraction | None
    r_max: Fraction | None
    r_mean: Fraction | None
    r_std: float | None
    rbar_min: Fraction | None
    rbar_max: Fraction | None
    rbar_mean: Fraction | None
    rbar_std: float | None


@dataclass
class MaxDegScan:
    records: list[tuple[str, int, int, int, bool]]  # graph6, m, cap, max_deg_g, matches
    counterexamples: int
    graphs_by_m: dict[int, int]
    counterexamples_by_m: dict[int, int]


@dataclass
class SampleScan:
    records: list[ScanRecord]
    violations: int
    metadata: dict = field(default_factory=dict)


# ---------------------------------------------------------------- helpers

def _map(fn: Callable, items: Sequence, jobs: int, chunksize: int = 64) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))


def _stats(vals: list[Fraction]) -> tuple[Fraction, Fraction, Fraction, float] | tuple[None, None, None, None]:
    if not vals:
        return None, None, None, None
    mean = sum(vals, Fraction(0)) / len(vals)
    var = sum(((v - mean) ** 2 for v in vals), Fraction(0)) / len(vals)
    return min(vals), max(vals), mean, math.sqrt(var)


def scan_record(g: Graph, star_shortcut: bool = True) -> ScanRecord:
    """All per-graph quantities; one compiled pass when no star shortcut applies."""
    if not is_connected(g):
        raise NotConnected(f"{to_graph6(g)} is not connected")
    u = universal_vertex(g)
    if star_shortcut and u is not None:
        cap = solve_mstci(g).intersection_number
        # the star tree is optimal and has degree n-1
        matches = True
    else:
        cap, matches = maxdeg_check(g)
    return ScanRecord(
        graph6=to_graph6(g),
        n=g.n,
        m=g.m,
        mu=g.m - g.n + 1,
        intersection_number=cap,
        has_universal_vertex=u is not None,
        is_mu_regular=is_mu_regular(g),
        max_deg_g=max_deg(g),
        exists_minimizer_with_max_deg=matches,
        l=lower_bound_l(g.n, g.m) if g.n > 1 else Fraction(0),
        l_bar=lower_bound_bar(g.n, g.m) if g.n > 1 else 0,
    )


def _record_from_g6(s: str) -> ScanRecord:
    return scan_record(parse_graph6(s))


def _record_from_g6_full(s: str) -> ScanRecord:
    return scan_record(parse_graph6(s), star_shortcut=False)


def aggregate(records: Iterable[ScanRecord]) -> list[AggregateRow]:
    groups: dict[tuple[int, int], list[ScanRecord]] = defaultdict(list)
    for r in records:
        groups[r.n, r.m].append(r)
    rows = []
    for (n, m), rs in sorted(groups.items()):
        caps = [r.intersection_number for r in rs]
        rvals = [r.r_G for r in rs if r.r_G is not None]
        bvals = [r.r_bar_G for r in rs if r.r_bar_G is not None]
        r_min, r_max, r_mean, r_std = _stats(rvals)
        b_min, b_max, b_mean, b_std = _stats(bvals)
        rows.append(AggregateRow(
            n, m, len(rs), min(caps), max(caps), Fraction(sum(caps), len(caps)),
            rs[0].l, rs[0].l_bar, r_min, r_max, r_mean, r_std, b_min, b_max, b_mean, b_std,
        ))
    return rows


# ---------------------------------------------------------------- scans

def scan_bounds(
    n: int, source: Iterable[Graph], jobs: int = 1, star_shortcut: bool = True
) -> tuple[list[ScanRecord], list[AggregateRow]]:
    graphs = list(source)
    for g in graphs:
        if g.n != n:
            raise ValueError(f"expected {n}-vertex graphs, got n={g.n}")
    fn = _record_from_g6 if star_shortcut else _record_from_g6_full
    records = _map(fn, [to_graph6(g) for g in graphs], jobs)
    records.sort(key=lambda r: (r.m, r.graph6))
    return records, aggregate(records)


def _cap_from_g6(s: str) -> int:
    return solve_mstci(parse_graph6(s)).intersection_number


def _successor_keys(s: str) -> tuple[CanonicalKey, list[CanonicalKey], list[str]]:
    g = parse_graph6(s)
    succ = successors(g)
    return canonical_key(g), [canonical_key(h) for h in succ], [to_graph6(h) for h in succ]


def scan_successor_dominance(
    n: int, source: Iterable[Graph], jobs: int = 1, memo: dict[CanonicalKey, int] | None = None
) -> list[DominanceRecord]:
    """Compare each graph's intersection number with those of all its successors.

    Each isomorphism class is solved once; successors are resolved through a
    canonical-key table seeded from the corpus itself.
    """
    g6s = []
    for g in source:
        if g.n != n:
            raise ValueError(f"expected {n}-vertex graphs, got n={g.n}")
        g6s.append(to_graph6(g))
    memo = {} if memo is None else memo
    caps = _map(_cap_from_g6, g6s, jobs)
    keyed = _map(_successor_keys, g6s, jobs)
    for (key, _, _), cap in zip(keyed, caps):
        memo.setdefault(key, cap)
    out = []
    for s, cap, (_, skeys, sg6) in zip(g6s, caps, keyed):
        succ_caps = []
        for k, h6 in zip(skeys, sg6):
            if k not in memo:
                memo.setdefault(k, _cap_from_g6(h6))
            succ_caps.append(memo[k])
        out.append(DominanceRecord(s, parse_graph6(s).m, len(skeys), cap, tuple(sorted(succ_caps))))
    out.sort(key=lambda r: (r.m, r.graph6))
    return out


def _maxdeg_from_g6(s: str) -> tuple[str, int, int, int, bool]:
    g = parse_graph6(s)
    cap, matches = maxdeg_check(g)
    return s, g.m, cap, max_deg(g), matches


def read_checkpoint(path: str) -> dict[str, tuple[int, bool | None]]:
    """Parse ``graph6<TAB>cap[<TAB>flag]`` lines; a truncated last line is ignored."""
    done: dict[str, tuple[int, bool | None]] = {}
    if not os.path.exists(path):
        return done
    with open(path, encoding="ascii") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            parts = line.rstrip("\n").split("\t")
            if len(parts) == 2:
                done[parts[0]] = (int(parts[1]), None)
            elif len(parts) == 3:
                done[parts[0]] = (int(parts[1]), parts[2] == "1")
    return done


def scan_maxdeg(
    n: int, source: Iterable[Graph], jobs: int = 1, checkpoint: str | None = None
) -> MaxDegScan:
    """Count graphs where every optimal tree has max degree below max-deg(G).

    Always enumerates every spanning tree. With ``checkpoint`` set, finished
    graphs are appended as ``graph6<TAB>cap<TAB>flag`` and skipped on rerun.
    """
    g6s = []
    for g in source:
        if g.n != n:
            raise ValueError(f"expected {n}-vertex graphs, got n={g.n}")
        g6s.append(to_graph6(g))
    done = read_checkpoint(checkpoint) if checkpoint else {}
    results: dict[str, tuple[str, int, int, int, bool]] = {}
    for s in g6s:
        if s in done and done[s][1] is not None:
            g = parse_graph6(s)
            results[s] = (s, g.m, done[s][0], max_deg(g), bool(done[s][1]))
    todo = [s for s in g6s if s not in results]
    if checkpoint:
        batch = max(1, 64 * max(1, jobs))
        with open(checkpoint, "a", encoding="ascii") as fh:
            for start in range(0, len(todo), batch):
                for rec in _map(_maxdeg_from_g6, todo[start : start + batch], jobs, chunksize=8):
                    results[rec[0]] = rec
                    fh.write(f"{rec[0]}\t{rec[2]}\t{int(rec[4])}\n")
                fh.flush()
    else:
        for rec in _map(_maxdeg_from_g6, todo, jobs, chunksize=8):
            results[rec[0]] = rec
    records = sorted((results[s] for s in g6s), key=lambda r: (r[1], r[0]))
    graphs_by_m = Counter(r[1] for r in records)
    bad_by_m = Counter(r[1] for r in records if not r[4])
    return MaxDegScan(
        records,
        sum(bad_by_m.values()),
        dict(sorted(graphs_by_m.items())),
        {m: bad_by_m.get(m, 0) for m in sorted(graphs_by_m)},
    )


SAMPLING_SCHEME = (
    "m uniform on [n-1, n(n-1)/2]; edge set uniform among m-subsets of vertex pairs "
    "(random.Random(seed).sample); rejected and redrawn (including m) if disconnected"
)


def sample_connected_graphs(n: int, samples: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    out = []
    while len(out) < samples:
        m = rng.randint(n - 1, len(pairs))
        g = from_edge_list(n, rng.sample(pairs, m))
        if is_connected(g):
            out.append(g)
    return out


def random_sample_scan(n: int, samples: int, seed: int, jobs: int = 1) -> SampleScan:
    """Random connected graphs checked against the conjectured bound l_bar <= cap.

    Records keep sampling order (duplicates possible).
    """
    if n < 2 or samples < 1:
        raise ValueError("need n >= 2 and samples >= 1")
    graphs = sample_connected_graphs(n, samples, seed)
    records = _map(_record_from_g6, [to_graph6(g) for g in graphs], jobs, chunksize=1)
    violations = sum(1 for r in records if r.l_bar > r.intersection_number)
    meta = {"n": n, "samples": samples, "seed": seed, "scheme": SAMPLING_SCHEME}
    return SampleScan(records, violations, meta)


# ---------------------------------------------------------------- lemma harness

@dataclass(frozen=True)
class LemmaCheck:
    name: str
    passed: bool
    detail: str = ""


def verify_lemmas(g: Graph, max_trees: int = 2000) -> list[LemmaCheck]:
    """Per-graph checks of the bond, cycle-edge, counting and one-edge lemmas.

    Bond-level statements are checked on the first ``max_trees`` spanning
    trees plus the first optimal tree; the one-edge statements use exact
    solves of every predecessor along a chord and every successor.
    """
    if not is_connected(g):
        raise NotConnected("lemma checks need a connected graph")
    if g.n > 8:
        raise ValueError("lemma checks are limited to n <= 8")
    res = solve_mstci(g, want_all_minimizers=True, allow_star_shortcut=False)
    cap = res.intersection_number
    trees = []
    for i, t in enumerate(enumerate_spanning_trees(g)):
        if i >= max_trees:
            break
        trees.append(t)
    if res.minimizer not in trees:
        trees.append(res.minimizer)

    pairwise = cycle_bonds = counting = None
    for t in trees:
        fc = fundamental_cycles(g, t)
        mask_of = dict(zip(fc.chords, fc.path_masks))
        bs = bonds(g, t)
        for pos, b in enumerate(bs.bonds):
            e = t.tree_edges[pos]
            others = sorted(b - {e})
            if e not in b or any(x not in mask_of for x in others):
                pairwise = pairwise or f"tree {t.tree_edges}: bond {pos} malformed"
            for x, y in combinations(others, 2):
                if not mask_of[x] & mask_of[y] and pairwise is None:
                    pairwise = f"tree {t.tree_edges}: chords {g.edges[x]},{g.edges[y]} in bond {pos} disjoint"
        for chord, mask in mask_of.items():
            inside = {pos for pos, b in enumerate(bs.bonds) if chord in b}
            on_path = {pos for pos in range(len(t.tree_edges)) if mask >> pos & 1}
            if inside != on_path or len(on_path) < 2:
                cycle_bonds = cycle_bonds or f"tree {t.tree_edges}: chord {g.edges[chord]}"
        nrb = non_redundant_bond_set(g, t)
        covered = sorted(i for b in nrb.bonds for i in b)
        ok = (
            covered == list(range(g.m))
            and all(nb <= b for nb, b in zip(nrb.bonds, bs.bonds))
            and sum(nrb.phi) == g.m - g.n + 1
            and sum(math.comb(p, 2) for p in nrb.phi) <= intersection_count(g, t)
        )
        if not ok:
            counting = counting or f"tree {t.tree_edges}: phi={nrb.phi}"

    checks = [
        LemmaCheck("bond_pairwise_intersect", pairwise is None, pairwise or ""),
        LemmaCheck("cycle_edge_every_bond", cycle_bonds is None, cycle_bonds or ""),
        LemmaCheck("bound_counting", counting is None, counting or ""),
    ]

    sub = None
    t = res.minimizer
    in_tree = set(t.tree_edges)
    for i, (u, v) in enumerate(g.edges):
        if i in in_tree:
            continue
        h = from_edge_list(g.n, [e for e in g.edges if e != (u, v)])
        c = solve_mstci(h).intersection_number
        if c > cap and sub is None:
            sub = f"removing chord {(u, v)} raises {cap} to {c}"
    checks.append(LemmaCheck("predecessor_along_chord", sub is None, sub or ""))

    inc = None
    for h in successors(g):
        added = next(e for e in h.edges if not g.has_edge(*e))
        hres = solve_mstci(h, want_all_minimizers=True, allow_star_shortcut=False)
        if hres.intersection_number < cap:
            idx = h.edge_index(*added)
            for ht in hres.all_minimizers:
                if idx not in ht.tree_edges and inc is None:
                    inc = f"successor +{added}: optimal tree {ht.tree_edges} avoids the new edge"
    checks.append(LemmaCheck("successor_minimizers_use_new_edge", inc is None, inc or ""))

    if g.n >= 2:
        mu = g.m - g.n + 1
        l = lower_bound_l(g.n, g.m)
        checks.append(LemmaCheck(
            "strict_lower_bound", mu == 0 or l < cap, f"l={l}, cap={cap}" if mu and l >= cap else ""
        ))
        lb = lower_bound_bar(g.n, g.m)
        checks.append(LemmaCheck(
            "conjectured_lower_bound", lb <= cap, f"l_bar={lb}, cap={cap}" if lb > cap else ""
        ))
    return checks


# ---------------------------------------------------------------- CSV

SCAN_COLUMNS = [
    "graph6", "n", "m", "mu", "cap", "universal", "mu_regular", "l_num", "l_den",
    "l_bar", "max_deg_g", "minimizer_matches_max_deg",
]
DOMINANCE_COLUMNS = ["graph6", "m", "successors", "cap", "successor_caps", "dominant"]
AGGREGATE_COLUMNS = [
    "n", "m", "count", "min_cap", "max_cap", "mean_cap", "l", "l_bar",
    "r_mean", "r_std", "rbar_mean", "rbar_std",
]
MAXDEG_COLUMNS = ["graph6", "m", "cap", "max_deg_g", "minimizer_matches_max_deg"]
HISTOGRAM_COLUMNS = ["m", "graphs", "counterexamples"]


def _b(x: bool) -> str:
    return "true" if x else "false"


def _d(x) -> str:
    return "" if x is None else f"{float(x):.6f}"


def _csv(columns: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def scan_csv(records: Iterable[ScanRecord]) -> str:
    return _csv(SCAN_COLUMNS, (
        [r.graph6, r.n, r.m, r.mu, r.intersection_number, _b(r.has_universal_vertex),
         _b(r.is_mu_regular), r.l.numerator, r.l.denominator, r.l_bar, r.max_deg_g,
         _b(r.exists_minimizer_with_max_deg)]
        for r in records
    ))


def dominance_csv(records: Iterable[DominanceRecord]) -> str:
    return _csv(DOMINANCE_COLUMNS, (
        [r.graph6, r.m, r.successor_count, r.own_intersection,
         ";".join(map(str, r.successor_intersections)), _b(r.dominant)]
        for r in records
    ))


def aggregate_csv(rows: Iterable[AggregateRow]) -> str:
    return _csv(AGGREGATE_COLUMNS, (
        [a.n, a.m, a.graph_count, a.min_cap, a.max_cap, _d(a.mean_cap), _d(a.l), a.l_bar,
         _d(a.r_mean), _d(a.r_std), _d(a.rbar_mean), _d(a.rbar_std)]
        for a in rows
    ))


def maxdeg_csv(scan: MaxDegScan) -> str:
    return _csv(MAXDEG_COLUMNS, ([s, m, cap, d, _b(ok)] for s, m, cap, d, ok in scan.records))


def histogram_csv(scan: MaxDegScan) -> str:
    return _csv(HISTOGRAM_COLUMNS, (
        [m, scan.graphs_by_m[m], scan.counterexamples_by_m[m]] for m in scan.graphs_by_m
    ))


def load_scan_csv(text: str) -> list[ScanRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(ScanRecord(
            row["graph6"], int(row["n"]), int(row["m"]), int(row["mu"]), int(row["cap"]),
            row["universal"] == "true", row["mu_regular"] == "true", int(row["max_deg_g"]),
            row["minimizer_matches_max_deg"] == "true",
            Fraction(int(row["l_num"]), int(row["l_den"])), int(row["l_bar"]),
        ))
    return out


def cocktail_party_check(n: int) -> tuple[int, int]:
    """Intersection numbers of the (n-2)-regular n-vertex graph and of its successor class."""
    from .graph import cocktail_party_graph

    g = cocktail_party_graph(n)
    cap = solve_mstci(g).intersection_number
    succ = {solve_mstci(h).intersection_number for h in successors(g)}
    (s,) = succ
    return cap, s
