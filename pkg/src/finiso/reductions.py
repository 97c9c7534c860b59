"""Constructions mapping one object kind into another.

Each map here carries a defining property relating the source and
target equivalence relations (tree isomorphism to isometry, graph
isomorphism to isometry, isometry to structure isomorphism, and so on);
the verification harness checks those properties against brute-force
oracles over finite corpora.  The switching-pair repair turns any
isometry between tree spaces into a genuine tree isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InsufficientThresholds,
    NotAnIsometry,
    RadiusTooSmall,
    RepairFailed,
    SequenceTooShort,
)
from .graphs import Graph
from .metric import (
    Bijection,
    MetricSpace,
    diameter,
    distance_spectrum,
    is_isometry,
    space_from_matrix,
)
from .rationals import format_rational
from .structures import RelationalStructure
from .trees import Node, Tree, is_tree_isomorphism, meet
from .ultrametric import require_ultrametric


@dataclass(frozen=True)
class RadiusSequence:
    """Strictly decreasing positive radii r_0 > r_1 > ... > 0."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = self.values
        if not vals:
            raise ValueError("radius sequence must be nonempty")
        if any(v <= 0 for v in vals):
            raise ValueError("radii must be positive")
        for a, b in zip(vals, vals[1:]):
            if a <= b:
                raise ValueError(f"radii must strictly decrease: {a} <= {b}")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @staticmethod
    def of(values) -> "RadiusSequence":
        return RadiusSequence(tuple(Fraction(v) for v in values))

    @staticmethod
    def harmonic(length: int) -> "RadiusSequence":
        """r_b = 1 + 1/(b+1): bounded away from zero."""
        return RadiusSequence.of(1 + Fraction(1, b + 1) for b in range(length))

    @staticmethod
    def dyadic(length: int) -> "RadiusSequence":
        """r_b = 2^-b: vanishing tail."""
        return RadiusSequence.of(Fraction(1, 2**b) for b in range(length))


def node_label(u: Node) -> str:
    return "(" + ",".join(str(a) for a in u) + ")"


def tree_to_space(T: Tree, radii: RadiusSequence) -> MetricSpace:
    """The tree metric d(u,v) = r_{len(meet(u,v))} on the node set.

    Meets of distinct nodes are strictly shorter than the deeper node,
    so a sequence as long as the tree depth suffices.  The result is
    ultrametric and the points appear in the tree's node order, root
    first.
    """
    if len(radii) < T.depth:
        raise SequenceTooShort(len(radii), T.depth)
    nodes = T.nodes
    n = len(nodes)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = radii[len(meet(nodes[i], nodes[j]))]
            rows[i][j] = rows[j][i] = d
    out = space_from_matrix(rows, [node_label(u) for u in nodes])
    assert out.is_ultrametric
    return out


def _switching_pairs(T: Tree, S: Tree, mapping: dict[Node, Node]):
    """Pairs (v0, v1): v1 terminal with parent v0, images crossed in S."""
    terminals_t = set(T.terminals())
    terminals_s = set(S.terminals())
    pairs = []
    for v1 in terminals_t:
        if not v1:
            continue
        v0 = v1[:-1]
        img0, img1 = mapping[v0], mapping[v1]
        if (
            img0 in terminals_s
            and img0[:-1] == img1
            and len(img1) == len(v0)
            and len(img0) == len(v1)
        ):
            pairs.append((v0, v1))
    return pairs


def repair_isometry_to_tree_iso(T: Tree, S: Tree, radii: RadiusSequence,
                                phi: Bijection) -> dict[Node, Node]:
    """Turn an isometry between the tree spaces into a tree isomorphism.

    The only way an isometry of the tree metrics can fail to respect
    inclusion is by swapping a terminal node with its immediate
    predecessor whose image situation is mirrored; the repair detects
    all such crossed pairs and swaps the map on each.
    """
    X, Y = tree_to_space(T, radii), tree_to_space(S, radii)
    if not is_isometry(X, Y, phi):
        raise NotAnIsometry("the given bijection does not preserve the tree metric")
    mapping = {T.nodes[i]: S.nodes[phi.forward[i]] for i in range(T.size)}
    for v0, v1 in _switching_pairs(T, S, mapping):
        mapping[v0], mapping[v1] = mapping[v1], mapping[v0]
    if not is_tree_isomorphism(T, S, mapping):
        raise RepairFailed("post-repair map failed the isomorphism certificate")
    return mapping


def graph_to_space(G: Graph) -> MetricSpace:
    """Vertices at distance 1 when adjacent, 2 otherwise."""
    one, two = Fraction(1), Fraction(2)
    rows = [
        [
            Fraction(0) if i == j else (one if G.adjacent(i, j) else two)
            for j in range(G.n)
        ]
        for i in range(G.n)
    ]
    return space_from_matrix(rows, [f"v{i}" for i in range(G.n)])


def default_thresholds(*spaces: MetricSpace) -> tuple[Fraction, ...]:
    """Joint spectrum of the given spaces plus one value above the maximum."""
    values: set[Fraction] = set()
    for X in spaces:
        values |= distance_spectrum(X)
    top = max(values, default=Fraction(0)) + 1
    return tuple(sorted(values | {top}))


def _check_separation(X: MetricSpace, thresholds) -> None:
    spectrum = sorted(distance_spectrum(X))
    for a, b in zip(spectrum, spectrum[1:]):
        if not any(a < q <= b for q in thresholds):
            raise InsufficientThresholds(a, b)
    if spectrum and not any(q > spectrum[-1] for q in thresholds):
        raise InsufficientThresholds(spectrum[-1], spectrum[-1])


def discrete_to_structure(X: MetricSpace, thresholds) -> RelationalStructure:
    """Binary relation P_q = {(n, m) : d(n, m) < q} for each threshold q.

    The thresholds must separate the spectrum of X (some q in (r, r']
    for every adjacent pair r < r' of realized distances, and some q
    above the maximum); with a shared separating set, structure
    isomorphism coincides with isometry.
    """
    qs = sorted(Fraction(q) for q in set(thresholds))
    _check_separation(X, qs)
    n = X.size
    relations = []
    for q in qs:
        tuples = frozenset(
            (i, j) for i in range(n) for j in range(n) if X.dist[i][j] < q
        )
        relations.append((f"P_{format_rational(q)}", 2, tuples))
    return RelationalStructure.build(n, relations)


def sum_space(parts, r: Fraction) -> MetricSpace:
    """Disjoint union with all cross-part distances equal to r.

    r must strictly exceed every part diameter; the parts are then
    recoverable as the open balls of radius r in the sum.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("need at least one part")
    r = Fraction(r)
    for idx, P in enumerate(parts):
        require_ultrametric(P)
        if r <= diameter(P):
            raise RadiusTooSmall(idx, r, diameter(P))
    offsets = []
    total = 0
    for P in parts:
        offsets.append(total)
        total += P.size
    rows = [[r] * total for _ in range(total)]
    labels = [""] * total
    for k, P in enumerate(parts):
        off = offsets[k]
        for i in range(P.size):
            labels[off + i] = f"{k}.{P.labels[i]}"
            for j in range(P.size):
                rows[off + i][off + j] = P.dist[i][j]
    out = space_from_matrix(rows, labels)
    assert out.is_ultrametric
    return out


def gromov_invariant(X: MetricSpace, n: int) -> frozenset:
    """Distance matrices of all (n+1)-tuples of points, with repetition.

    Each matrix is a tuple of row tuples of exact rationals; the set is
    deduplicated, so the invariant does not see tuple order or
    multiplicity.
    """
    if n < 0:
        raise ValueError("tuple length exponent must be >= 0")
    dist = X.dist
    out = set()
    for tup in itertools.product(range(X.size), repeat=n + 1):
        out.add(tuple(tuple(dist[a][b] for b in tup) for a in tup))
    return frozenset(out)


def gromov_full(X: MetricSpace) -> tuple[frozenset, ...]:
    """Invariant sets for n = 0 .. |X| - 1; a complete isometry invariant."""
    return tuple(gromov_invariant(X, n) for n in range(X.size))
