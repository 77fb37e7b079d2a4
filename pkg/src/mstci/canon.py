"""Canonical labeling and isomorph-free generation of small connected graphs.

The canonical key of a graph is the lexicographically smallest upper-triangle
bit string (graph6 column order) over all vertex orderings. The search places
vertices one position at a time; since the bits contributed by position ``k``
come right after those of positions ``< k``, only candidates minimizing the
new column can lead to the minimum. Swapping two unplaced twins is an
automorphism fixing the placed prefix, so one twin per class is tried.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .graph import Graph, from_adjacency, relabel

CANON_MAX_N = 10


class CanonicalKey(NamedTuple):
    n: int
    bits: int  # upper triangle in graph6 order, first bit most significant


def _twin_class(g: Graph) -> list[int]:
    rep = list(range(g.n))
    for v in range(g.n):
        for u in range(v):
            if rep[u] == u and g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
                rep[v] = u
                break
    return rep


def canonical_order(g: Graph) -> list[int]:
    """Vertex order whose induced labeling attains the minimum key."""
    n = g.n
    if n > CANON_MAX_N:
        raise ValueError(f"canonical labeling supports n <= {CANON_MAX_N}")
    adj = g.adj
    twin = _twin_class(g)
    best_cols: list[int] | None = None
    best_order: list[int] = []
    order: list[int] = []
    cols: list[int] = []

    def search(placed: int) -> None:
        nonlocal best_cols, best_order
        k = len(order)
        if k == n:
            if best_cols is None or cols < best_cols:
                best_cols = cols.copy()
                best_order = order.copy()
            return
        cand: dict[int, tuple[int, int]] = {}
        for c in range(n):
            if placed >> c & 1 or twin[c] in cand:
                continue
            a = adj[c]
            col = 0
            for p in order:
                col = col << 1 | (a >> p & 1)
            cand[twin[c]] = (col, c)
        low = min(cand.values())[0]
        cols.append(low)
        if best_cols is None or cols <= best_cols[: k + 1]:
            for col, c in sorted(cand.values()):
                if col != low:
                    break
                order.append(c)
                search(placed | 1 << c)
                order.pop()
                if best_cols is not None and cols > best_cols[: k + 1]:
                    break
        cols.pop()

    search(0)
    return best_order


def canonical_form(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return relabel(g, perm)


def _key_of_order(g: Graph, order: list[int]) -> int:
    bits = 0
    for k in range(1, g.n):
        a = g.adj[order[k]]
        for i in range(k):
            bits = bits << 1 | (a >> order[i] & 1)
    return bits


def canonical_key(g: Graph) -> CanonicalKey:
    return CanonicalKey(g.n, _key_of_order(g, canonical_order(g)))


def graph_from_key(key: CanonicalKey) -> Graph:
    n, bits = key
    total = n * (n - 1) // 2
    adj = [0] * n
    k = total - 1
    for v in range(1, n):
        for u in range(v):
            if bits >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            k -= 1
    return from_adjacency(n, adj)


def _extend(g: Graph) -> Iterator[Graph]:
    """All graphs on n+1 vertices obtained by joining a new vertex to a non-empty subset."""
    n = g.n
    base = list(g.adj) + [0]
    for s in range(1, 1 << n):
        adj = base.copy()
        adj[n] = s
        for v in range(n):
            if s >> v & 1:
                adj[v] |= 1 << n
        yield from_adjacency(n + 1, adj)


def generate_connected(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class of connected graphs.

    Every connected graph has a non-cut vertex, so each class on ``n`` vertices
    arises from a connected graph on ``n - 1`` vertices plus one new vertex.
    Output is sorted by (m, canonical key).
    """
    if not 1 <= n <= 9:
        raise ValueError("generate_connected supports 1 <= n <= 9")
    level = {canonical_key(from_adjacency(1, [0])): None}
    for k in range(2, n + 1):
        nxt: dict[CanonicalKey, None] = {}
        for key in level:
            for h in _extend(graph_from_key(key)):
                nxt.setdefault(canonical_key(h), None)
        level = nxt
    reps = [graph_from_key(k) for k in level]
    reps.sort(key=lambda h: (h.m, canonical_key(h).bits))
    return reps


def dedupe(graphs: Iterable[Graph]) -> list[Graph]:
    """Keep the first graph of each isomorphism class (connected or not)."""
    seen = set()
    out = []
    for g in graphs:
        k = canonical_key(g)
        if k not in seen:
            seen.add(k)
            out.append(g)
    return out


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_key(g) == canonical_key(h)

