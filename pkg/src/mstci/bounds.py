"""Closed-form lower bounds on the intersection number and mu-regular graphs.

All bounds are exact: ``l`` is a Fraction, ``l_bar`` an int.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb

from .errors import InfeasibleSize, InvariantViolation, ZeroIntersection
from .graph import Graph, degrees, from_edge_list, is_connected, universal_vertex
from .trees import star_formula


def _check_size(n: int, m: int) -> None:
    if n < 2:
        raise InfeasibleSize(f"bounds need n >= 2, got n={n}")
    if not n - 1 <= m <= n * (n - 1) // 2:
        raise InfeasibleSize(f"no connected simple graph has n={n}, m={m}")


def lower_bound_l(n: int, m: int) -> Fraction:
    """(mu^2 / (n-1) - mu) / 2 with mu = m - n + 1."""
    _check_size(n, m)
    mu = m - n + 1
    return Fraction(mu * mu - mu * (n - 1), 2 * (n - 1))


def qr_decompose(n: int, m: int) -> tuple[int, int]:
    """Quotient and remainder of 2*mu divided by n-1."""
    _check_size(n, m)
    return divmod(2 * (m - n + 1), n - 1)


def lower_bound_bar(n: int, m: int) -> int:
    q, r = qr_decompose(n, m)
    val = (n - 1) * comb(q, 2) + q * r
    if val != (n - 1 - r) * comb(q, 2) + r * comb(q + 1, 2):
        raise InvariantViolation(f"the two forms of l_bar disagree at n={n}, m={m}")
    return val


def effective_bound(n: int, m: int) -> int:
    """max(0, ceil(l)); for display only."""
    return max(0, ceil(lower_bound_l(n, m)))


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    mu: int
    l: Fraction
    q: int
    r: int
    l_bar: int


def bounds_report(n: int, m: int) -> BoundsReport:
    q, r = qr_decompose(n, m)
    return BoundsReport(n, m, m - n + 1, lower_bound_l(n, m), q, r, lower_bound_bar(n, m))


def is_mu_regular(g: Graph) -> bool:
    """Universal vertex present and the other degrees split n-1-r at q+1, r at q+2."""
    if g.n < 2 or not is_connected(g):
        return False
    hub = universal_vertex(g)
    if hub is None:
        return False
    q, r = qr_decompose(g.n, g.m)
    rest = [d for v, d in enumerate(degrees(g)) if v != hub]
    return rest.count(q + 1) == g.n - 1 - r and rest.count(q + 2) == r


def build_mu_regular(n: int, m: int) -> Graph:
    """Hub 0 plus a near-regular graph on 1..n-1 realized by Havel-Hakimi.

    Vertices 1..r get degree q+1 in the non-hub part, the rest q; ties in the
    Havel-Hakimi order break by lower vertex index.
    """
    q, r = qr_decompose(n, m)
    want = {v: (q + 1 if v <= r else q) for v in range(1, n)}
    edges = [(0, v) for v in range(1, n)]
    left = dict(want)
    while True:
        live = sorted((v for v in left if left[v] > 0), key=lambda v: (-left[v], v))
        if not live:
            break
        v = live[0]
        targets = live[1 : 1 + left[v]]
        if len(targets) < left[v]:
            raise InvariantViolation(f"degree sequence for n={n}, m={m} is not graphic")
        for w in targets:
            edges.append((min(v, w), max(v, w)))
            left[w] -= 1
        left[v] = 0
    g = from_edge_list(n, edges)
    if g.m != m or not is_mu_regular(g):
        raise InvariantViolation(f"construction failed for n={n}, m={m}")
    return g


def dense_shortcut(g: Graph) -> int | None:
    """Star-formula value when m > n(n-2)/2 (a universal vertex must exist), else None."""
    if 2 * g.m <= g.n * (g.n - 2):
        return None
    u = universal_vertex(g)
    if u is None:
        raise InvariantViolation(f"m={g.m} > n(n-2)/2 but no universal vertex")
    return star_formula(g, u)


@dataclass(frozen=True)
class RatioReport:
    r_G: Fraction
    r_bar_G: Fraction


def ratios(g: Graph, intersection_number: int) -> RatioReport:
    if intersection_number <= 0:
        raise ZeroIntersection("ratios are undefined when the intersection number is 0")
    return RatioReport(
        Fraction(lower_bound_l(g.n, g.m)) / intersection_number,
        Fraction(lower_bound_bar(g.n, g.m), intersection_number),
    )


def regular_family_ratio(k: int) -> Fraction:
    """l / cap for a hub plus n-1 vertices of G-degree k: (k-3) / (4(k-2))."""
    return Fraction(k - 3, 4 * (k - 2))
