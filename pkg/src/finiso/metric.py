"""Finite metric spaces with exact rational distances.

A space is a tuple of point labels plus a square matrix of
`fractions.Fraction` distances.  Construction goes through
:func:`validate_metric`, which checks the four metric axioms exactly
(equality-sensitive, no floating point anywhere) and records whether the
strengthened max-inequality d(x,z) <= max(d(x,y), d(y,z)) holds as well.

Isometry search comes in two modes: ``exhaustive`` enumerates every
bijection and serves as the oracle; ``pruned`` backtracks with
row-multiset pruning and returns the lexicographically least
certificate.  A returned :class:`Bijection` can be re-checked with
:func:`is_isometry`, which is deliberately independent of either search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import search
from .errors import (
    NonzeroDiagonal,
    SymmetryViolation,
    TriangleViolation,
    ZeroOffDiagonal,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class MetricSpace:
    """Immutable point set with an exact distance matrix.

    ``is_ultrametric`` is set by :func:`validate_metric` and gates the
    operations that need the max-inequality.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]
    is_ultrametric: bool

    @property
    def size(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def __repr__(self):
        return f"MetricSpace(n={self.size}, ultrametric={self.is_ultrametric})"


@dataclass(frozen=True)
class Bijection:
    """Point correspondence; ``forward[i]`` is the image of source index i."""

    forward: tuple[int, ...]

    def __post_init__(self):
        n = len(self.forward)
        if sorted(self.forward) != list(range(n)):
            raise ValueError(f"not a bijection onto 0..{n - 1}: {self.forward}")

    @property
    def size(self) -> int:
        return len(self.forward)

    def inverse(self) -> "Bijection":
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return Bijection(tuple(inv))

    def compose(self, other: "Bijection") -> "Bijection":
        """self after other: i -> self.forward[other.forward[i]]."""
        return Bijection(tuple(self.forward[j] for j in other.forward))


def validate_metric(labels, matrix) -> MetricSpace:
    """Check all metric axioms on an exact matrix and build a MetricSpace.

    Raises the violation naming the witnessing indices.  Empty matrices
    are rejected.  The ultrametric flag is computed from the same triple
    sweep that checks the triangle inequality.
    """
    rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
    n = len(rows)
    if n == 0:
        raise ValueError("empty spaces are not admitted")
    for row in rows:
        if len(row) != n:
            raise ValueError("distance matrix is not square")
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} points")

    for i in range(n):
        if rows[i][i] != 0:
            raise NonzeroDiagonal(i, rows[i][i])
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise SymmetryViolation(i, j, rows[i][j], rows[j][i])
            if rows[i][j] == 0:
                raise ZeroOffDiagonal(i, j)

    ultra = True
    for i in range(n):
        di = rows[i]
        for j in range(n):
            if j == i:
                continue
            dij = di[j]
            dj = rows[j]
            for k in range(n):
                if k == i or k == j:
                    continue
                dik = di[k]
                djk = dj[k]
                if dik > dij + djk:
                    raise TriangleViolation(i, j, k, dik, dij, djk)
                if dik > max(dij, djk):
                    ultra = False
    return MetricSpace(labels, rows, ultra)


def space_from_matrix(matrix, labels=None) -> MetricSpace:
    """Validate a matrix with default labels p0..p{n-1}."""
    n = len(matrix)
    if labels is None:
        labels = [f"p{i}" for i in range(n)]
    return validate_metric(labels, matrix)


@lru_cache(maxsize=65536)
def distance_spectrum(X: MetricSpace) -> frozenset[Fraction]:
    """Set of nonzero distances realized in X."""
    n = X.size
    return frozenset(X.dist[i][j] for i in range(n) for j in range(i + 1, n))


def realized_by(X: MetricSpace, i: int) -> frozenset[Fraction]:
    """Set of nonzero distances realized at point i."""
    return frozenset(v for v in X.dist[i] if v != 0)


def diameter(X: MetricSpace) -> Fraction:
    return max((v for row in X.dist for v in row), default=ZERO)


def restrict(X: MetricSpace, indices) -> MetricSpace:
    """Induced subspace on the given point indices, in the given order."""
    idx = tuple(indices)
    labels = tuple(X.labels[i] for i in idx)
    rows = tuple(tuple(X.dist[i][j] for j in idx) for i in idx)
    return space_from_matrix(rows, labels)


def relabel(X: MetricSpace, bij: Bijection) -> MetricSpace:
    """Copy of X with point i moved to position bij.forward[i]."""
    inv = bij.inverse().forward
    labels = tuple(X.labels[inv[i]] for i in range(X.size))
    rows = tuple(
        tuple(X.dist[inv[i]][inv[j]] for j in range(X.size)) for i in range(X.size)
    )
    return MetricSpace(labels, rows, X.is_ultrametric)


def is_isometry(X: MetricSpace, Y: MetricSpace, bij: Bijection) -> bool:
    """Certificate check: d_X(i,j) == d_Y(f(i),f(j)) for all pairs.

    Plain double loop over exact values, independent of the search code.
    """
    if X.size != Y.size or bij.size != X.size:
        return False
    f = bij.forward
    for i in range(X.size):
        for j in range(X.size):
            if X.dist[i][j] != Y.dist[f[i]][f[j]]:
                return False
    return True


def _shared_encoding(X: MetricSpace, Y: MetricSpace):
    values = sorted(set(v for row in X.dist for v in row)
                    | set(v for row in Y.dist for v in row))
    return (search.encode_values(X.dist, values),
            search.encode_values(Y.dist, values))


def find_isometry(X: MetricSpace, Y: MetricSpace, mode: str = "pruned") -> Bijection | None:
    """Find a distance-preserving bijection from X onto Y, or None.

    ``exhaustive`` enumerates all |X|! bijections (the oracle);
    ``pruned`` backtracks, pruning candidates whose sorted distance-row
    multisets differ, and returns the lexicographically least
    certificate.  Size mismatch yields None.
    """
    if mode not in ("pruned", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    if X.size != Y.size:
        return None
    if mode == "exhaustive":
        mx, my = _shared_encoding(X, Y)
        p = search.find_matching_permutation(mx, my)
        return None if p is None else Bijection(p)
    return _pruned_search(X, Y)


def _pruned_search(X: MetricSpace, Y: MetricSpace) -> Bijection | None:
    n = X.size
    row_key_x = [tuple(sorted(X.dist[i])) for i in range(n)]
    row_key_y = [tuple(sorted(Y.dist[j])) for j in range(n)]
    if sorted(row_key_x) != sorted(row_key_y):
        return None
    candidates = [
        [j for j in range(n) if row_key_y[j] == row_key_x[i]] for i in range(n)
    ]
    assignment = [-1] * n
    used = [False] * n
    dx, dy = X.dist, Y.dist

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                if dx[i][k] != dy[j][assignment[k]]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
                assignment[i] = -1
        return False

    if extend(0):
        return Bijection(tuple(assignment))
    return None


@lru_cache(maxsize=65536)
def isometry_key(X: MetricSpace):
    """Complete isometry invariant from the full bijection enumeration.

    Key = (size, sorted distinct distances, canonical relabelled pattern).
    Two spaces are isometric iff their keys are equal; the pattern side is
    computed by sweeping all |X|! relabellings (see :mod:`finiso.search`).
    """
    values = sorted(set(v for row in X.dist for v in row))
    pattern = search.canonical_pattern(search.encode_values(X.dist, values))
    return (X.size, tuple(values), pattern)


@lru_cache(maxsize=65536)
def _canonical_witness(X: MetricSpace):
    values = sorted(set(v for row in X.dist for v in row))
    pattern, perm = search.canonical_witness(search.encode_values(X.dist, values))
    return (X.size, tuple(values), pattern), perm


def isometry_from_keys(X: MetricSpace, Y: MetricSpace) -> Bijection | None:
    """Certificate between spaces whose exhaustive canonical keys agree.

    If q_X and q_Y are the canonicalising relabellings, q_Y^{-1} o q_X
    maps X onto Y distance-preservingly.  Returns None when the keys
    differ (i.e. the spaces are not isometric).
    """
    key_x, perm_x = _canonical_witness(X)
    key_y, perm_y = _canonical_witness(Y)
    if key_x != key_y:
        return None
    bij = Bijection(perm_y).compose(Bijection(perm_x).inverse())
    assert is_isometry(X, Y, bij)
    return bij
