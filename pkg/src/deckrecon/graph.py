"""Labeled simple graphs stored as adjacency bitrows.

Vertex ``v`` is bit ``1 << v``; ``rows[u]`` is the neighbourhood bitmask of
``u``.  Orders run from 1 to :data:`MAX_ORDER`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MalformedEncoding, OrderTooLarge

MAX_ORDER = 62


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise OrderTooLarge(f"order {self.n} outside 1..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per vertex")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full or row >> u & 1:
                raise ValueError(f"row {u} has out-of-range bits or a self-loop")
            for v in _bits(row):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        rows = [0] * self.n
        for u in range(self.n):
            img = 0
            for v in _bits(self.rows[u]):
                img |= 1 << perm[v]
            rows[perm[u]] = img
        return Graph(self.n, tuple(rows))

    def add_vertex(self, neighbors: int) -> "Graph":
        """Append vertex ``n`` adjacent to the bitmask ``neighbors``."""
        new = self.n
        rows = [row | ((neighbors >> u & 1) << new) for u, row in enumerate(self.rows)]
        rows.append(neighbors)
        return Graph(self.n + 1, tuple(rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def delete_vertex(g: Graph, v: int) -> Graph:
    """Induced subgraph on all vertices except ``v``; survivors keep their relative order."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} not in graph of order {g.n}")
    if g.n < 2:
        raise ValueError("cannot delete a vertex from a 1-vertex graph")
    low = (1 << v) - 1
    rows = []
    for u, row in enumerate(g.rows):
        if u != v:
            rows.append((row & low) | (row >> (v + 1) << v))
    return Graph(g.n - 1, tuple(rows))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    rows = []
    for v in vertices:
        row = 0
        for u in _bits(g.rows[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph(len(vertices), tuple(rows))


# --- clique counting -------------------------------------------------------


def _count_in(rows: Sequence[int], cand: int, k: int) -> int:
    """Number of k-cliques inside the vertex set ``cand``."""
    if k == 0:
        return 1
    if k == 1:
        return cand.bit_count()
    total = 0
    if k == 2:
        while cand:
            low = cand & -cand
            cand ^= low
            total += (cand & rows[low.bit_length() - 1]).bit_count()
        return total
    while cand:
        low = cand & -cand
        cand ^= low
        nxt = cand & rows[low.bit_length() - 1]
        if nxt.bit_count() >= k - 1:
            total += _count_in(rows, nxt, k - 1)
    return total


def count_cliques(g: Graph, r: int) -> int:
    """Exact number of r-vertex complete subgraphs."""
    if r < 1:
        raise ValueError("clique size must be >= 1")
    if r > g.n:
        return 0
    return _count_in(g.rows, g.vertex_mask, r)


def clique_degree(g: Graph, v: int, r: int) -> int:
    """Number of r-cliques containing ``v``."""
    if r < 1:
        raise ValueError("clique size must be >= 1")
    if r == 1:
        return 1
    return _count_in(g.rows, g.rows[v], r - 1)


def clique_profile(g: Graph, mask: int | None = None) -> list[int]:
    """``out[k]`` = number of k-cliques inside ``mask`` for k = 0..n.

    One enumeration pass gives every size at once; ``out[0]`` is 1.
    """
    rows = g.rows
    out = [0] * (g.n + 1)
    out[0] = 1

    def walk(cand: int, depth: int) -> None:
        while cand:
            low = cand & -cand
            cand ^= low
            out[depth] += 1
            nxt = cand & rows[low.bit_length() - 1]
            if nxt:
                walk(nxt, depth + 1)

    walk(g.vertex_mask if mask is None else mask, 1)
    return out


def clique_degree_profile(g: Graph, v: int) -> list[int]:
    """``out[r]`` = deg_r(v) for r = 0..n, with ``out[0] = 0`` and ``out[1] = 1``."""
    inner = clique_profile(g, g.rows[v])
    return [0] + inner[: g.n]


# --- graph6 ----------------------------------------------------------------


def emit_graph6(g: Graph) -> str:
    """graph6 line for ``g`` (no header, no newline)."""
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        row = g.rows[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(line: str) -> Graph:
    s = line.strip()
    if not s:
        raise MalformedEncoding("empty graph6 line")
    if s.startswith(">>graph6<<"):
        raise MalformedEncoding("graph6 header prefix is not accepted")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise MalformedEncoding(f"invalid graph6 character in {s!r}")
    if s[0] == "~":
        raise OrderTooLarge(f"graph6 order above {MAX_ORDER} in {s[:8]!r}")
    n = ord(s[0]) - 63
    if n == 0:
        raise MalformedEncoding("order-0 graphs are not supported")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedEncoding(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    bits = []
    for c in body:
        x = ord(c) - 63
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise MalformedEncoding("nonzero padding bits")
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Graph(n, tuple(rows))


# --- small named graphs used by tests and docs ------------------------------


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel(n: int) -> Graph:
    """Hub 0 joined to a cycle on vertices 1..n-1."""
    rim = n - 1
    edges = [(0, i) for i in range(1, n)]
    edges += [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph.from_edges(n, edges)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges += [(u + offset, v + offset) for u, v in h.edges()]
        offset += h.n
    return Graph.from_edges(offset, edges)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.rows)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complete_minus(n: int, removed: Iterable[tuple[int, int]]) -> Graph:
    gone = {frozenset(e) for e in removed}
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if frozenset(e) not in gone])
