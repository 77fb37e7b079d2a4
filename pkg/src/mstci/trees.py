"""Spanning trees, fundamental tree-cycles, bonds and intersection counting.

A spanning tree stores its edges as indices into ``Graph.edges`` in increasing
order; the position of an edge in that tuple is its *tree position*, and all
tree-path masks are bit masks over tree positions (at most 15 bits).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .errors import InvalidTree, NotConnected, NotUniversal
from .graph import Graph, is_connected


@dataclass(frozen=True)
class SpanningTree:
    tree_edges: tuple[int, ...]

    @property
    def tree_edge_mask(self) -> int:
        mask = 0
        for i in self.tree_edges:
            mask |= 1 << i
        return mask

    def edge_pairs(self, g: Graph) -> list[tuple[int, int]]:
        return [g.edges[i] for i in self.tree_edges]

    def degrees(self, g: Graph) -> list[int]:
        deg = [0] * g.n
        for i in self.tree_edges:
            u, v = g.edges[i]
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_deg(self, g: Graph) -> int:
        return max(self.degrees(g)) if g.n > 1 else 0


@dataclass(frozen=True)
class FundamentalCycleSet:
    """One entry per chord: (chord edge index, mask of tree positions on its tree path)."""

    chords: tuple[int, ...]
    path_masks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.chords)


@dataclass(frozen=True)
class BondSet:
    """``bonds[p]`` holds the graph edge indices crossing the cut of tree position ``p``."""

    tree: SpanningTree
    bonds: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class NonRedundantBondSet:
    tree: SpanningTree
    bonds: tuple[frozenset[int], ...]

    @property
    def phi(self) -> tuple[int, ...]:
        return tuple(len(b) - 1 for b in self.bonds)


def tree_from_edges(g: Graph, pairs: Sequence[Sequence[int]]) -> SpanningTree:
    """Spanning tree given by vertex pairs; validated against ``g``."""
    idx = []
    for u, v in pairs:
        if not g.has_edge(u, v):
            raise InvalidTree(f"({u},{v}) is not an edge of the graph")
        idx.append(g.edge_index(u, v))
    t = SpanningTree(tuple(sorted(idx)))
    check_tree(g, t)
    return t


def star_tree(g: Graph, u: int) -> SpanningTree:
    return tree_from_edges(g, [(u, v) for v in range(g.n) if v != u])


def check_tree(g: Graph, t: SpanningTree) -> None:
    if len(t.tree_edges) != g.n - 1 or len(set(t.tree_edges)) != g.n - 1:
        raise InvalidTree(f"a spanning tree of an {g.n}-vertex graph has {g.n - 1} edges")
    if any(not 0 <= i < g.m for i in t.tree_edges) or list(t.tree_edges) != sorted(t.tree_edges):
        raise InvalidTree("tree edge indices must be sorted and within the edge list")
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in t.tree_edges:
        u, v = g.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            raise InvalidTree(f"edge {g.edges[i]} closes a cycle")
        parent[ru] = rv


# ---------------------------------------------------------------- enumeration

def enumerate_spanning_trees(g: Graph) -> Iterator[SpanningTree]:
    """Yield every spanning tree once, by include/exclude recursion over edges.

    An edge is included when it joins two components of the partial forest
    and excluded only when the forest plus the remaining edges still spans,
    so every branch ends in a tree. Order: include before exclude, edges in
    graph order.
    """
    if not is_connected(g):
        raise NotConnected("spanning trees need a connected graph")
    n, edges = g.n, g.edges
    m = len(edges)
    parent = list(range(n))
    size = [1] * n
    chosen: list[int] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def spans_from(j: int) -> bool:
        roots = [find(v) for v in range(n)]
        aux = list(range(n))

        def f(x: int) -> int:
            while aux[x] != x:
                aux[x] = aux[aux[x]]
                x = aux[x]
            return x

        need = n - len(chosen) - 1
        for u, v in edges[j:]:
            a, b = f(roots[u]), f(roots[v])
            if a != b:
                aux[a] = b
                need -= 1
                if need == 0:
                    return True
        return need == 0

    def rec(i: int) -> Iterator[SpanningTree]:
        if len(chosen) == n - 1:
            yield SpanningTree(tuple(chosen))
            return
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            yield from rec(i + 1)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        chosen.append(i)
        yield from rec(i + 1)
        chosen.pop()
        size[ru] -= size[rv]
        parent[rv] = rv
        if spans_from(i + 1):
            yield from rec(i + 1)

    if m == 0 and n == 1:
        yield SpanningTree(())
        return
    yield from rec(0)


def spanning_tree_count(g: Graph) -> int:
    """Kirchhoff count: determinant of a reduced Laplacian, in exact arithmetic."""
    if not is_connected(g):
        raise NotConnected("spanning tree count needs a connected graph")
    n = g.n
    if n == 1:
        return 1
    lap = [[Fraction(0)] * n for _ in range(n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    a = [row[1:] for row in lap[1:]]
    k = n - 1
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, k):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, k):
                    a[r][j] -= f * a[c][j]
    assert det.denominator == 1
    return int(det)


# ---------------------------------------------------------------- tree-cycles

def _rooted(g: Graph, t: SpanningTree) -> tuple[list[int], list[int], list[int]]:
    """Parent vertex, parent tree position and depth for ``t`` rooted at vertex 0."""
    n = g.n
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for pos, i in enumerate(t.tree_edges):
        u, v = g.edges[i]
        nbrs[u].append((v, pos))
        nbrs[v].append((u, pos))
    par = [-1] * n
    ppos = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        x = stack.pop()
        for y, pos in nbrs[x]:
            if not seen[y]:
                seen[y] = True
                par[y], ppos[y], depth[y] = x, pos, depth[x] + 1
                stack.append(y)
    return par, ppos, depth


def _path_mask(u: int, v: int, par: list[int], ppos: list[int], depth: list[int]) -> int:
    mask = 0
    while depth[u] > depth[v]:
        mask |= 1 << ppos[u]
        u = par[u]
    while depth[v] > depth[u]:
        mask |= 1 << ppos[v]
        v = par[v]
    while u != v:
        mask |= 1 << ppos[u] | 1 << ppos[v]
        u, v = par[u], par[v]
    return mask


def fundamental_cycles(g: Graph, t: SpanningTree) -> FundamentalCycleSet:
    check_tree(g, t)
    par, ppos, depth = _rooted(g, t)
    in_tree = set(t.tree_edges)
    chords = tuple(i for i in range(g.m) if i not in in_tree)
    masks = tuple(_path_mask(*g.edges[i], par, ppos, depth) for i in chords)
    return FundamentalCycleSet(chords, masks)


def count_intersecting_pairs(masks: Sequence[int]) -> int:
    c = 0
    for a in range(len(masks)):
        ma = masks[a]
        for b in range(a + 1, len(masks)):
            if ma & masks[b]:
                c += 1
    return c


def intersection_count(g: Graph, t: SpanningTree) -> int:
    """Number of unordered tree-cycle pairs sharing at least one tree edge."""
    return count_intersecting_pairs(fundamental_cycles(g, t).path_masks)


def cycle_intersection_matrix(g: Graph, t: SpanningTree) -> np.ndarray:
    """Gram matrix of the unsigned cycle-edge incidence of the fundamental cycles.

    Diagonal entries are cycle lengths (tree path plus chord); off-diagonal
    entries count shared tree edges, since distinct chords are never shared.
    """
    masks = fundamental_cycles(g, t).path_masks
    mu = len(masks)
    out = np.zeros((mu, mu), dtype=np.int64)
    for a in range(mu):
        out[a, a] = masks[a].bit_count() + 1
        for b in range(a + 1, mu):
            out[a, b] = out[b, a] = (masks[a] & masks[b]).bit_count()
    return out


def cycle_edge_incidence(g: Graph, t: SpanningTree) -> np.ndarray:
    """0/1 matrix with one row per graph edge and one column per fundamental cycle."""
    fc = fundamental_cycles(g, t)
    inc = np.zeros((g.m, len(fc)), dtype=np.int64)
    for col, (chord, mask) in enumerate(zip(fc.chords, fc.path_masks)):
        inc[chord, col] = 1
        for pos, i in enumerate(t.tree_edges):
            if mask >> pos & 1:
                inc[i, col] = 1
    return inc


# ---------------------------------------------------------------- bonds

def _cut_side(g: Graph, t: SpanningTree, pos: int) -> int:
    """Vertex mask of the component of ``T - e`` holding the lower endpoint of ``e``."""
    removed = t.tree_edges[pos]
    tadj = [0] * g.n
    for i in t.tree_edges:
        if i != removed:
            u, v = g.edges[i]
            tadj[u] |= 1 << v
            tadj[v] |= 1 << u
    start = g.edges[removed][0]
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= tadj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def bonds(g: Graph, t: SpanningTree) -> BondSet:
    check_tree(g, t)
    out = []
    for pos in range(len(t.tree_edges)):
        side = _cut_side(g, t, pos)
        out.append(frozenset(
            i for i, (u, v) in enumerate(g.edges) if (side >> u & 1) != (side >> v & 1)
        ))
    return BondSet(t, tuple(out))


def non_redundant_bond_set(g: Graph, t: SpanningTree) -> NonRedundantBondSet:
    """Each tree edge keeps itself; each chord goes to the lowest tree position on its path."""
    fc = fundamental_cycles(g, t)
    parts: list[set[int]] = [{i} for i in t.tree_edges]
    for chord, mask in zip(fc.chords, fc.path_masks):
        parts[(mask & -mask).bit_length() - 1].add(chord)
    return NonRedundantBondSet(t, tuple(frozenset(p) for p in parts))


def star_formula(g: Graph, u: int) -> int:
    """Intersection number of a graph with universal vertex ``u``: sum of C(d(v)-1, 2)."""
    full = (1 << g.n) - 1
    if g.adj[u] | (1 << u) != full:
        raise NotUniversal(f"vertex {u} is not universal")
    return sum(comb(g.adj[v].bit_count() - 1, 2) for v in range(g.n) if v != u)
