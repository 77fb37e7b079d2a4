"""Exact MSTCI solver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotConnected
from .graph import Graph, is_connected, universal_vertex
from .trees import SpanningTree, enumerate_spanning_trees, intersection_count, star_formula, star_tree


@dataclass(frozen=True)
class MstciResult:
    intersection_number: int
    minimizer: SpanningTree
    all_minimizers: tuple[SpanningTree, ...] | None
    trees_enumerated: int
    used_star_shortcut: bool


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    return eu, ev


def solve_mstci(
    g: Graph,
    want_all_minimizers: bool = False,
    allow_star_shortcut: bool = True,
    backend: str = "compiled",
) -> MstciResult:
    """Minimum over all spanning trees of the number of intersecting tree-cycle pairs.

    With a universal vertex present (and only one minimizer wanted) the star
    tree is optimal and its value has a closed form, so nothing is enumerated.
    ``backend="python"`` runs the reference enumerator instead of the compiled
    kernel; both visit trees in the same order.
    """
    if not is_connected(g):
        raise NotConnected("MSTCI is defined for connected graphs")
    if allow_star_shortcut and not want_all_minimizers:
        u = universal_vertex(g)
        if u is not None:
            return MstciResult(star_formula(g, u), star_tree(g, u), None, 0, True)

    if backend == "python":
        best = None
        found: list[SpanningTree] = []
        count = 0
        for t in enumerate_spanning_trees(g):
            count += 1
            val = intersection_count(g, t)
            if best is None or val < best:
                best, found = val, [t]
            elif val == best and want_all_minimizers:
                found.append(t)
        return MstciResult(best, found[0], tuple(found) if want_all_minimizers else None, count, False)
    if backend != "compiled":
        raise ValueError(f"unknown backend {backend!r}")

    from ._kernel import solve_kernel

    eu, ev = _edge_arrays(g)
    best, count, rows, _ = solve_kernel(g.n, eu, ev, want_all_minimizers, -1)
    trees = tuple(SpanningTree(tuple(int(x) for x in row)) for row in rows)
    return MstciResult(int(best), trees[0], trees if want_all_minimizers else None, int(count), False)


def maxdeg_check(g: Graph) -> tuple[int, bool]:
    """Intersection number and whether some optimal tree reaches max-deg(G).

    Always enumerates every tree (no star shortcut).
    """
    if not is_connected(g):
        raise NotConnected("MSTCI is defined for connected graphs")
    from ._kernel import solve_kernel

    target = max(a.bit_count() for a in g.adj)
    eu, ev = _edge_arrays(g)
    best, _, _, best_target = solve_kernel(g.n, eu, ev, False, target)
    return int(best), int(best_target) == int(best)
