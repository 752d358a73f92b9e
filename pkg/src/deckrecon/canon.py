"""Exact canonical forms by colour refinement and individualisation.

The search tree is the usual one: refine to an equitable colouring,
individualise each vertex of the first non-singleton cell, recurse.  Every
discrete leaf yields a relabelled graph; the lexicographically smallest
graph6 string over all leaves is the certificate.  Leaves that coincide with
the current best give automorphisms, which prune sibling subtrees lying in
the same orbit of the pointwise stabiliser of the current prefix.
"""

from __future__ import annotations

from functools import lru_cache

from .graph import Graph, emit_graph6


def _refine(nbrs: list[list[int]], colors: list[int]) -> list[int]:
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nb))) for v, nb in enumerate(nbrs)]
        uniq = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        if len(uniq) == k:
            return colors
        k = len(uniq)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c + 1 for c in colors]
    out[v] -= 1
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _search(g: Graph) -> tuple[str, tuple[int, ...]]:
    nbrs = [g.neighbors(v) for v in range(g.n)]
    best: list = [None, None]  # certificate string, labeling
    autos: list[tuple[int, ...]] = []

    def leaf(colors: list[int]) -> None:
        perm = tuple(colors)
        cert = emit_graph6(g.relabel(perm))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, perm
        elif cert == best[0]:
            inv = [0] * g.n
            for v, p in enumerate(best[1]):
                inv[p] = v
            auto = tuple(inv[perm[v]] for v in range(g.n))
            if any(auto[v] != v for v in range(g.n)):
                autos.append(auto)

    def walk(colors: list[int], prefix: tuple[int, ...]) -> None:
        colors = _refine(nbrs, colors)
        if len(set(colors)) == g.n:
            leaf(colors)
            return
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(g.n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if tried:
                uf = _UnionFind(range(g.n))
                for a in autos:
                    if all(a[p] == p for p in prefix):
                        for x in range(g.n):
                            uf.union(x, a[x])
                root = uf.find(v)
                if any(uf.find(t) == root for t in tried):
                    continue
            tried.append(v)
            walk(_individualize(colors, v), prefix + (v,))

    walk([0] * g.n, ())
    return best[0], best[1]


@lru_cache(maxsize=1 << 16)
def _cached(g: Graph) -> str:
    return _search(g)[0]


def canonical_certificate(g: Graph) -> bytes:
    """Relabeling-invariant, class-separating certificate.

    The bytes are the graph6 encoding of a canonical relabelling of ``g``,
    so two graphs of the same order share a certificate iff isomorphic.
    """
    return _cached(g).encode("ascii")


def canonical_form(g: Graph) -> Graph:
    _, perm = _search(g)
    return g.relabel(perm)


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_certificate(a) == canonical_certificate(b)
