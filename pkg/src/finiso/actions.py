"""Finite group actions with rational metrics, and the orbit encoding.

A :class:`GroupAction` bundles a finite group (multiplication table), a
left-invariant rational metric on it, a finite metric space of points,
and the action table.  Group laws, metric validity, and left invariance
are enforced at construction; the bounds (both metrics at most 1) and
the compatibility condition

    d_G(g, h) >= 1/2 * d_Y(g^-1.y, h^-1.y)   for all y, g, h

are what :func:`adjust_group_metric` establishes, and what
:func:`orbit_encode` requires.  The encoding appends one star point per
point of Y, with distances chosen so that two points lie in the same
orbit exactly when their encoded spaces are isometric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAnAction, NotLeftInvariant, PreconditionViolated
from .metric import MetricSpace, space_from_matrix, validate_metric


@dataclass(frozen=True)
class GroupAction:
    mult: tuple[tuple[int, ...], ...]
    d_group: tuple[tuple[Fraction, ...], ...]
    d_points: tuple[tuple[Fraction, ...], ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.mult)

    @property
    def points(self) -> int:
        return len(self.d_points)

    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mult[e][g] == g for g in range(self.order)):
                return e
        raise NotAnAction("no identity element in multiplication table")

    def inverse(self, g: int) -> int:
        e = self.identity()
        for h in range(self.order):
            if self.mult[g][h] == e and self.mult[h][g] == e:
                return h
        raise NotAnAction(f"element {g} has no inverse")

    def act(self, g: int, y: int) -> int:
        return self.action[g][y]

    def group_space(self) -> MetricSpace:
        return space_from_matrix(self.d_group, [f"g{i}" for i in range(self.order)])

    def point_space(self) -> MetricSpace:
        return space_from_matrix(self.d_points, [f"y{i}" for i in range(self.points)])


def validate_group_action(mult, d_group, d_points, action) -> GroupAction:
    """Check group laws, action laws, metric validity, and left invariance."""
    mult = tuple(tuple(int(v) for v in row) for row in mult)
    action = tuple(tuple(int(v) for v in row) for row in action)
    n = len(mult)
    if any(len(row) != n for row in mult):
        raise NotAnAction("multiplication table is not square")
    if any(not (0 <= v < n) for row in mult for v in row):
        raise NotAnAction("multiplication table entry out of range")

    dg = tuple(tuple(Fraction(v) for v in row) for row in d_group)
    dy = tuple(tuple(Fraction(v) for v in row) for row in d_points)
    validate_metric([f"g{i}" for i in range(n)], dg)
    validate_metric([f"y{i}" for i in range(len(dy))], dy)
    m = len(dy)
    if len(action) != n or any(len(row) != m for row in action):
        raise NotAnAction("action table shape does not match group and point set")
    if any(not (0 <= v < m) for row in action for v in row):
        raise NotAnAction("action table entry out of range")

    ga = GroupAction(mult, dg, dy, action)

    # Group laws: identity and inverses come from the accessors (which
    # raise if missing); associativity is checked directly.
    e = ga.identity()
    for g in range(n):
        ga.inverse(g)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                    raise NotAnAction(f"associativity fails at ({a},{b},{c})")

    # Action laws: e.y = y and (gh).y = g.(h.y).
    for y in range(m):
        if action[e][y] != y:
            raise NotAnAction(f"identity does not fix point {y}")
    for g in range(n):
        for h in range(n):
            gh = mult[g][h]
            for y in range(m):
                if action[gh][y] != action[g][action[h][y]]:
                    raise NotAnAction(f"composition fails at g={g}, h={h}, y={y}")

    for h in range(n):
        for g in range(n):
            for gp in range(n):
                if dg[mult[h][g]][mult[h][gp]] != dg[g][gp]:
                    raise NotLeftInvariant(h, g, gp)
    return ga


def _sup_point_displacement(ga: GroupAction, g: int, h: int) -> Fraction:
    gi, hi = ga.inverse(g), ga.inverse(h)
    return max(
        ga.d_points[ga.act(gi, y)][ga.act(hi, y)] for y in range(ga.points)
    )


def satisfies_encoding_preconditions(ga: GroupAction) -> bool:
    """Both metrics bounded by 1 and the halved-displacement condition."""
    one = Fraction(1)
    if any(v > one for row in ga.d_group for v in row):
        return False
    if any(v > one for row in ga.d_points for v in row):
        return False
    for g in range(ga.order):
        for h in range(ga.order):
            if 2 * ga.d_group[g][h] < _sup_point_displacement(ga, g, h):
                return False
    return True


def adjust_group_metric(ga: GroupAction) -> GroupAction:
    """Rescale both metrics into [0, 1], then blend the group metric.

    The new group metric is the mean of the old one and the largest
    point displacement, which forces the halved-displacement condition
    while preserving left invariance.
    """
    def rescaled(rows):
        diam = max((v for row in rows for v in row), default=Fraction(0))
        scale = max(Fraction(1), diam)
        return tuple(tuple(v / scale for v in row) for row in rows)

    dg = rescaled(ga.d_group)
    dy = rescaled(ga.d_points)
    half = Fraction(1, 2)
    step = GroupAction(ga.mult, dg, dy, ga.action)
    new_dg = tuple(
        tuple(
            half * dg[g][h] + half * _sup_point_displacement(step, g, h)
            for h in range(ga.order)
        )
        for g in range(ga.order)
    )
    out = validate_group_action(ga.mult, new_dg, dy, ga.action)
    assert satisfies_encoding_preconditions(out)
    return out


def orbit_encode(ga: GroupAction, z: int) -> MetricSpace:
    """Metric space on the group plus one star point per point of Y.

    Distances: the group keeps its metric; stars sit at
    max(n, m) + 2 from each other and at (n + 2) + d_Y(y_n, g^-1.z)/2
    from group elements.  Same orbit of z means isometric encodings.
    """
    if not (0 <= z < ga.points):
        raise ValueError(f"point index {z} out of range")
    if not satisfies_encoding_preconditions(ga):
        raise PreconditionViolated(
            "metrics must be bounded by 1 and dominate half the point "
            "displacement; apply adjust_group_metric first"
        )
    k, m = ga.order, ga.points
    total = k + m
    rows = [[Fraction(0)] * total for _ in range(total)]
    labels = [f"g{i}" for i in range(k)] + [f"star{n}" for n in range(m)]
    for g in range(k):
        for h in range(k):
            rows[g][h] = ga.d_group[g][h]
    half = Fraction(1, 2)
    for n in range(m):
        for mm in range(m):
            if n != mm:
                rows[k + n][k + mm] = Fraction(max(n, mm) + 2)
        for g in range(k):
            d = (n + 2) + half * ga.d_points[n][ga.act(ga.inverse(g), z)]
            rows[k + n][g] = rows[g][k + n] = d
    return validate_metric(labels, rows)


def orbit_equivalent(ga: GroupAction, z1: int, z2: int) -> bool:
    return any(ga.act(g, z1) == z2 for g in range(ga.order))


def orbit_of(ga: GroupAction, z: int) -> frozenset[int]:
    return frozenset(ga.act(g, z) for g in range(ga.order))
