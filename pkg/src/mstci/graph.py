"""Simple undirected graphs on at most 16 labeled vertices.

Vertices are ``0..n-1``. Edges are kept as sorted ``(u, v)`` pairs with
``u < v``, so edge indices are stable across runs; adjacency is mirrored in
one neighbour bit mask per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    GraphError,
    MalformedGraph6,
    NotConnected,
    SelfLoop,
    VertexOutOfRange,
)

MAX_N = 16
Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        return self.edges.index((u, v))

    def neighbors(self, v: int) -> list[int]:
        a = self.adj[v]
        return [w for w in range(self.n) if a >> w & 1]

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph, normalizing each pair to ``u < v`` and sorting the list.

    Raises SelfLoop, DuplicateEdge or VertexOutOfRange on bad input.
    """
    if not 1 <= n <= MAX_N:
        raise GraphError(f"vertex count must be in [1, {MAX_N}], got {n}")
    seen = set()
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside [0,{n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise DuplicateEdge(f"duplicate edge ({u},{v})")
        seen.add((u, v))
    ordered = tuple(sorted(seen))
    adj = [0] * n
    for u, v in ordered:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, ordered, tuple(adj))


def from_adjacency(n: int, adj: Sequence[int]) -> Graph:
    """Build a graph from symmetric neighbour masks (no validation of symmetry beyond u<v scan)."""
    edges = tuple((u, v) for v in range(n) for u in range(v) if adj[u] >> v & 1)
    return from_edge_list(n, edges)


def complete_graph(n: int) -> Graph:
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int) -> Graph:
    return from_edge_list(n, [(0, i) for i in range(1, n)])


def wheel_graph(n: int) -> Graph:
    """Hub 0 joined to a cycle on ``1..n-1``."""
    rim = [(i, i % (n - 1) + 1) for i in range(1, n)]
    return from_edge_list(n, [(0, i) for i in range(1, n)] + rim)


def cocktail_party_graph(n: int) -> Graph:
    """K_n minus the perfect matching ``{(2i, 2i+1)}``; n must be even."""
    if n % 2:
        raise GraphError("cocktail party graph needs an even vertex count")
    return from_edge_list(
        n, [(u, v) for u in range(n) for v in range(u + 1, n) if not (u % 2 == 0 and v == u + 1)]
    )


# ---------------------------------------------------------------- graph6

def _graph6_bits(g: Graph) -> Iterator[int]:
    # upper triangle, column by column: (0,1),(0,2),(1,2),(0,3),...
    for v in range(1, g.n):
        a = g.adj[v]
        for u in range(v):
            yield a >> u & 1


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("only the short graph6 form (n <= 62) is supported")
    out = [chr(g.n + 63)]
    acc = nbits = 0
    for b in _graph6_bits(g):
        acc = acc << 1 | b
        nbits += 1
        if nbits == 6:
            out.append(chr(acc + 63))
            acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (short form, no header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    codes = [ord(c) for c in s]
    for i, c in enumerate(codes):
        if not 63 <= c <= 126:
            raise MalformedGraph6(f"byte {c:#04x} at offset {i} outside 63..126")
    n = codes[0] - 63
    if n == 63:
        raise MalformedGraph6("long-form graph6 (n > 62) is not supported")
    if not 1 <= n <= MAX_N:
        raise MalformedGraph6(f"vertex count {n} not supported (1..{MAX_N})")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = codes[1:]
    if len(body) != need:
        raise MalformedGraph6(f"expected {need} data bytes for n={n}, got {len(body)}")
    bits = []
    for c in body:
        x = c - 63
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return from_edge_list(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Yield graphs from graph6 text; blank lines and ``>`` comments are skipped.

    Malformed lines raise MalformedGraph6 with the 1-based line number prepended.
    """
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s or s.startswith(">") and not s.startswith(">>graph6<<"):
            continue
        try:
            yield parse_graph6(s)
        except MalformedGraph6 as exc:
            raise MalformedGraph6(f"line {lineno}: {exc}") from None


def read_graph6_file(path) -> list[Graph]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return list(read_graph6_lines(fh))


# ---------------------------------------------------------------- queries

def is_connected(g: Graph) -> bool:
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def degrees(g: Graph) -> list[int]:
    return [a.bit_count() for a in g.adj]


def max_deg(g: Graph) -> int:
    return max(degrees(g))


def min_deg(g: Graph) -> int:
    return min(degrees(g))


def universal_vertex(g: Graph) -> int | None:
    """Smallest vertex adjacent to every other vertex, or None."""
    full = (1 << g.n) - 1
    for v, a in enumerate(g.adj):
        if a | (1 << v) == full:
            return v
    return None


def cyclomatic(g: Graph) -> int:
    if not is_connected(g):
        raise NotConnected("cyclomatic number is defined here for connected graphs only")
    return g.m - g.n + 1


def non_edges(g: Graph) -> list[Edge]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.adj[u] >> v & 1]


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return from_edge_list(g.n, g.edges + ((u, v),))


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if u > v:
        u, v = v, u
    return from_edge_list(g.n, [e for e in g.edges if e != (u, v)])


def successors(g: Graph) -> list[Graph]:
    """One graph per non-edge, in lexicographic non-edge order."""
    return [add_edge(g, u, v) for u, v in non_edges(g)]


def predecessors(g: Graph) -> list[Graph]:
    """One connected graph per non-bridge edge, in edge order."""
    out = []
    for u, v in g.edges:
        h = remove_edge(g, u, v)
        if is_connected(h):
            out.append(h)
    return out


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex map ``v -> perm[v]``."""
    return from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def parse_edge_spec(n: int, spec: str) -> Graph:
    """Parse ``"0-1,1-2,..."`` into a graph on ``n`` vertices."""
    edges = []
    for tok in spec.replace(" ", "").split(","):
        if not tok:
            continue
        try:
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
        except ValueError:
            raise GraphError(f"bad edge token {tok!r}; expected 'u-v'") from None
    return from_edge_list(n, edges)
