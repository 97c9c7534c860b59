"""Finite prefix trees over a bounded alphabet.

A tree is a nonempty, prefix-closed set of integer sequences ordered by
initial-segment inclusion.  Canonical codes follow the classic
bottom-up multiset scheme (leaf for terminal nodes, sorted child codes
elsewhere), rank is the well-founded height, and the enumerator streams
every prefix-closed node set within bounds exactly once in a fixed
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import search
from .codes import CanonicalCode, LEAF, node, sort_key
from .errors import EmptyInput, MissingPrefix
from .metric import Bijection

Node = tuple[int, ...]


@dataclass(frozen=True)
class Tree:
    """Prefix-closed node set; ``nodes`` is sorted by (length, lex)."""

    nodes: tuple[Node, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def depth(self) -> int:
        return max(len(u) for u in self.nodes)

    def index(self, u: Node) -> int:
        return self.nodes.index(u)

    def children(self, u: Node) -> tuple[Node, ...]:
        lu = len(u)
        return tuple(v for v in self.nodes if len(v) == lu + 1 and v[:lu] == u)

    def terminals(self) -> tuple[Node, ...]:
        return tuple(u for u in self.nodes if not self.children(u))

    def parent(self, u: Node) -> Node | None:
        return u[:-1] if u else None

    def __repr__(self):
        return f"Tree({self.size} nodes, depth {self.depth})"


def validate_tree(sequences) -> Tree:
    """Accept a node set iff it is nonempty and closed under prefixes."""
    nodes = sorted({tuple(int(v) for v in u) for u in sequences},
                   key=lambda u: (len(u), u))
    if not nodes:
        raise EmptyInput("a tree must contain at least the empty sequence")
    present = set(nodes)
    for u in nodes:
        if u and u[:-1] not in present:
            raise MissingPrefix(u, u[:-1])
    return Tree(tuple(nodes))


def meet(u: Node, v: Node) -> Node:
    """Longest common initial segment of two sequences."""
    i = 0
    while i < len(u) and i < len(v) and u[i] == v[i]:
        i += 1
    return tuple(u[:i])


@lru_cache(maxsize=65536)
def tree_canonical(T: Tree) -> CanonicalCode:
    """Label-independent code; equal codes iff the trees are isomorphic."""

    def code_of(u: Node) -> CanonicalCode:
        kids = T.children(u)
        if not kids:
            return LEAF
        return node(None, (code_of(c) for c in kids))

    return code_of(())


def tree_rank(T: Tree) -> int:
    """Well-founded height: 0 at terminal nodes, else max successor rank + 1."""
    rank: dict[Node, int] = {}
    for u in sorted(T.nodes, key=len, reverse=True):
        kids = T.children(u)
        rank[u] = max((rank[c] + 1 for c in kids), default=0)
    return rank[()]


def enumerate_trees(max_nodes: int, branching: int, depth: int):
    """Every prefix-closed node set within the bounds, exactly once.

    Deterministic order: node count ascending, then lexicographic on the
    sorted node list.  Bounds must all be at least 1.
    """
    if max_nodes < 1 or branching < 1 or depth < 1:
        raise ValueError("bounds must be positive")
    seen: set[frozenset[Node]] = set()
    found: list[Tree] = []

    def grow(nodes: frozenset[Node]):
        if nodes in seen:
            return
        seen.add(nodes)
        found.append(Tree(tuple(sorted(nodes, key=lambda u: (len(u), u)))))
        if len(nodes) == max_nodes:
            return
        for u in nodes:
            if len(u) < depth:
                for a in range(branching):
                    child = u + (a,)
                    if child not in nodes:
                        grow(nodes | {child})

    grow(frozenset({()}))
    found.sort(key=lambda t: (t.size, t.nodes))
    yield from found


def is_tree_isomorphism(T: Tree, S: Tree, mapping: dict[Node, Node]) -> bool:
    """Certificate check: bijective and inclusion-preserving both ways.

    Length preservation is implied but checked explicitly as well.
    """
    if set(mapping) != set(T.nodes):
        return False
    if sorted(mapping.values()) != sorted(S.nodes):
        return False
    for u in T.nodes:
        if len(mapping[u]) != len(u):
            return False
    for u in T.nodes:
        for v in T.nodes:
            forward = _is_prefix(u, v)
            if forward != _is_prefix(mapping[u], mapping[v]):
                return False
    return True


def _is_prefix(u: Node, v: Node) -> bool:
    return len(u) <= len(v) and v[: len(u)] == u


def _inclusion_matrix(T: Tree):
    n = T.size
    return [
        [1 if _is_prefix(T.nodes[i], T.nodes[j]) else 0 for j in range(n)]
        for i in range(n)
    ]


def find_tree_isomorphism(T: Tree, S: Tree, mode: str = "pruned") -> dict[Node, Node] | None:
    """Search for an inclusion-preserving bijection between node sets.

    ``exhaustive`` sweeps all bijections via the inclusion matrices;
    ``pruned`` matches children recursively by canonical code.  Both
    agree on existence; results pass :func:`is_tree_isomorphism`.
    """
    if mode not in ("pruned", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    if T.size != S.size:
        return None
    if mode == "exhaustive":
        p = search.find_matching_permutation(_inclusion_matrix(T), _inclusion_matrix(S))
        if p is None:
            return None
        mapping = {T.nodes[i]: S.nodes[p[i]] for i in range(T.size)}
        assert is_tree_isomorphism(T, S, mapping)
        return mapping
    return _match_by_code(T, S)


def _match_by_code(T: Tree, S: Tree) -> dict[Node, Node] | None:
    def subtree_code(tree: Tree, u: Node) -> CanonicalCode:
        kids = tree.children(u)
        if not kids:
            return LEAF
        return node(None, (subtree_code(tree, c) for c in kids))

    if subtree_code(T, ()) != subtree_code(S, ()):
        return None
    mapping: dict[Node, Node] = {(): ()}

    def pair_up(u: Node, v: Node):
        kids_u = sorted(T.children(u), key=lambda c: sort_key_cache[(0, c)])
        kids_v = sorted(S.children(v), key=lambda c: sort_key_cache[(1, c)])
        for cu, cv in zip(kids_u, kids_v):
            mapping[cu] = cv
            pair_up(cu, cv)

    sort_key_cache: dict[tuple[int, Node], object] = {}
    for side, tree in ((0, T), (1, S)):
        for u in tree.nodes:
            sort_key_cache[(side, u)] = sort_key(subtree_code(tree, u))

    pair_up((), ())
    assert is_tree_isomorphism(T, S, mapping)
    return mapping


@lru_cache(maxsize=65536)
def tree_key(T: Tree):
    """Exhaustive canonical key over the inclusion matrix (complete invariant)."""
    return (T.size, search.canonical_pattern(_inclusion_matrix(T)))
