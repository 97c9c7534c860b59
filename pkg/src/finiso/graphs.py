"""Simple undirected graphs, with an exhaustive isomorphism oracle.

Kept deliberately small: graphs only enter the library as inputs to the
graph-to-metric-space construction and as a corpus for the verification
harness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import search
from .metric import Bijection


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def build(n: int, edges) -> "Graph":
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        norm = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"loop at {a} not allowed in a simple graph")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a},{b}) out of range")
            norm.add((min(a, b), max(a, b)))
        return Graph(n, frozenset(norm))

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def adjacency_matrix(self):
        m = [[0] * self.n for _ in range(self.n)]
        for a, b in self.edges:
            m[a][b] = m[b][a] = 1
        return m


def all_graphs(n: int):
    """Every labelled simple graph on exactly n vertices, lex order on edge sets."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.build(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def graph_isomorphic(G: Graph, H: Graph) -> Bijection | None:
    """Exhaustive search over all vertex bijections."""
    if G.n != H.n:
        return None
    p = search.find_matching_permutation(G.adjacency_matrix(), H.adjacency_matrix())
    return None if p is None else Bijection(p)


@lru_cache(maxsize=65536)
def graph_key(G: Graph):
    """Exhaustive canonical key; equal keys iff isomorphic."""
    return (G.n, search.canonical_pattern(G.adjacency_matrix()))
