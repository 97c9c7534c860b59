"""Structure theory of finite ultrametric spaces.

Everything here leans on the max-inequality: d(x,y) < r is an
equivalence relation for each r, open balls are nested or disjoint, and
the nesting of balls across the realized radii is a complete isometry
invariant (the dendrogram).  Operations take validated
:class:`~finiso.metric.MetricSpace` values whose ultrametric flag is
set, and raise :class:`NotUltrametric` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .codes import CanonicalCode, LEAF, node
from .errors import DomainGap, NotMonotone, NotUltrametric
from .metric import MetricSpace, diameter, distance_spectrum, restrict, space_from_matrix
from .rationals import format_rational
from .structures import RelationalStructure


def require_ultrametric(X: MetricSpace) -> None:
    if not X.is_ultrametric:
        raise NotUltrametric()


def ball_partition(X: MetricSpace, r: Fraction):
    """Blocks of the equivalence d(x,y) < r: the open balls of radius r.

    Returned as a tuple of index tuples, blocks in order of first point,
    points in index order.
    """
    require_ultrametric(X)
    if r <= 0:
        raise ValueError("radius must be positive")
    blocks: list[list[int]] = []
    for i in range(X.size):
        for block in blocks:
            # d(.,.) < r is transitive here, so one representative suffices
            if X.dist[i][block[0]] < r:
                block.append(i)
                break
        else:
            blocks.append([i])
    return tuple(tuple(b) for b in blocks)


@lru_cache(maxsize=65536)
def canonical_code(X: MetricSpace) -> CanonicalCode:
    """Dendrogram code: complete invariant for isometry of ultrametric spaces.

    Singletons map to the leaf; otherwise split at the diameter into the
    open balls of that radius and recurse, collecting the child codes as
    a sorted multiset under the node's radius.
    """
    require_ultrametric(X)
    if X.size == 1:
        return LEAF
    r = diameter(X)
    blocks = ball_partition(X, r)
    return node(r, (canonical_code(restrict(X, b)) for b in blocks))


@dataclass(frozen=True)
class BallStructure:
    """All open balls of a space at its separating radii.

    ``balls`` lists the distinct open balls (as point-index sets) in a
    deterministic order; ``inclusion`` holds the pairs (i, j) with
    ball i a subset of ball j; ``small_diameter`` maps each threshold q
    to the balls of diameter < q.
    """

    balls: tuple[frozenset[int], ...]
    thresholds: tuple[Fraction, ...]
    inclusion: frozenset[tuple[int, int]]
    small_diameter: tuple[tuple[Fraction, frozenset[int]], ...]

    def as_structure(self) -> RelationalStructure:
        relations = [("R", 2, frozenset(self.inclusion))]
        for q, members in self.small_diameter:
            relations.append(
                (f"S_{format_rational(q)}", 1, frozenset((b,) for b in members))
            )
        return RelationalStructure.build(len(self.balls), relations)


def ball_structure(X: MetricSpace) -> BallStructure:
    """Balls, inclusion, and diameter predicates over Q = R(X) u {diam+1}.

    The threshold set is the minimal one separating all realized
    distances; it always includes one radius above the diameter so the
    whole space appears as a ball.
    """
    require_ultrametric(X)
    thresholds = sorted(distance_spectrum(X) | {diameter(X) + 1})
    seen = set()
    balls = []
    for q in thresholds:
        for block in ball_partition(X, q):
            fs = frozenset(block)
            if fs not in seen:
                seen.add(fs)
                balls.append(fs)
    balls.sort(key=lambda b: (len(b), sorted(b)))
    balls = tuple(balls)
    inclusion = frozenset(
        (i, j) for i, a in enumerate(balls) for j, b in enumerate(balls) if a <= b
    )
    diam_of = [
        max((X.dist[i][j] for i in b for j in b), default=Fraction(0)) for b in balls
    ]
    small = tuple(
        (q, frozenset(i for i, d in enumerate(diam_of) if d < q)) for q in thresholds
    )
    return BallStructure(balls, tuple(thresholds), inclusion, small)


def sphere_decompose(X: MetricSpace, center: int):
    """Spheres around a point: [(r, points at distance exactly r)], r increasing.

    The spheres partition everything except the center.
    """
    by_radius: dict[Fraction, list[int]] = {}
    for j in range(X.size):
        if j == center:
            continue
        by_radius.setdefault(X.dist[center][j], []).append(j)
    return [(r, tuple(by_radius[r])) for r in sorted(by_radius)]


_anchored_memo: dict[tuple[CanonicalCode, CanonicalCode], bool] = {}


def anchored_isometry_check(X: MetricSpace, Y: MetricSpace) -> bool:
    """Anchored criterion: agree with full isometry by matching spheres.

    Fix the first point of X; look for a point of Y whose sphere
    decomposition matches radius-by-radius, with the paired spheres
    recursively anchored-isometric as induced subspaces.  Candidate
    anchors are tried in index order; sub-verdicts are memoized keyed by
    the dendrogram codes of the two subspaces.
    """
    require_ultrametric(X)
    require_ultrametric(Y)
    return _anchored(X, Y)


def _anchored(U: MetricSpace, V: MetricSpace) -> bool:
    if U.size != V.size:
        return False
    if U.size == 1:
        return True
    key = (canonical_code(U), canonical_code(V))
    cached = _anchored_memo.get(key)
    if cached is not None:
        return cached
    dec_u = sphere_decompose(U, 0)
    shape_u = [(r, len(pts)) for r, pts in dec_u]
    result = False
    for y in range(V.size):
        dec_v = sphere_decompose(V, y)
        if [(r, len(pts)) for r, pts in dec_v] != shape_u:
            continue
        if all(
            _anchored(restrict(U, pu), restrict(V, pv))
            for (_, pu), (_, pv) in zip(dec_u, dec_v)
        ):
            result = True
            break
    _anchored_memo[key] = result
    return result


def transfer(X: MetricSpace, rho: dict[Fraction, Fraction]) -> MetricSpace:
    """Apply a strictly increasing positive map to every distance.

    The domain must cover the spectrum of X; the result is again
    ultrametric with spectrum the image of R(X), and the isometry class
    of a pair of spaces is preserved by applying the same map to both.
    """
    require_ultrametric(X)
    rho = {Fraction(a): Fraction(b) for a, b in rho.items()}
    dom = sorted(rho)
    for a, b in zip(dom, dom[1:]):
        if rho[a] >= rho[b]:
            raise NotMonotone(a, b)
    for a in dom:
        if rho[a] <= 0:
            raise ValueError(f"map value at {a} must be positive")
    for v in sorted(distance_spectrum(X)):
        if v not in rho:
            raise DomainGap(v)
    rows = [
        [rho[v] if v != 0 else Fraction(0) for v in row] for row in X.dist
    ]
    out = space_from_matrix(rows, X.labels)
    assert out.is_ultrametric
    return out


def universal_discrete(distances, copies: int) -> MetricSpace:
    """The space D x {0..k-1} with d((r,a),(q,b)) = max(r, q) off-diagonal.

    Realizes exactly the distance set D; needs at least two copies so
    every distance is attained by a same-level pair.
    """
    dset = sorted(Fraction(v) for v in set(distances))
    if not dset:
        raise ValueError("distance set must be nonempty")
    if any(v <= 0 for v in dset):
        raise ValueError("distances must be positive")
    if copies < 2:
        raise ValueError("need at least two copies per distance")
    points = [(r, a) for r in dset for a in range(copies)]
    labels = [f"{format_rational(r)}:{a}" for r, a in points]
    rows = [
        [Fraction(0) if p == q else max(p[0], q[0]) for q in points] for p in points
    ]
    out = space_from_matrix(rows, labels)
    assert out.is_ultrametric
    return out
