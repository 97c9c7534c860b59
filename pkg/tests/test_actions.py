"""Group actions, metric adjustment, and the orbit encoding."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from finiso.actions import (
    adjust_group_metric,
    orbit_encode,
    orbit_equivalent,
    satisfies_encoding_preconditions,
    validate_group_action,
)
from finiso.corpus import fixed_actions, permutation_action, random_action
from finiso.errors import NotAnAction, NotLeftInvariant, PreconditionViolated
from finiso.metric import Bijection, is_isometry

from oracles import brute_isometric

F = Fraction

D2 = [[F(0), F(1)], [F(1), F(0)]]


def c2_swap():
    return permutation_action([(1, 0)], D2)


def test_validate_rejects_bad_multiplication():
    with pytest.raises(NotAnAction):
        validate_group_action([[0, 1], [1, 1]], D2, D2, [[0, 1], [1, 0]])


def test_validate_rejects_broken_action_law():
    # an involution cannot act as a 3-cycle: g.g.y != y
    d3 = [[F(0) if i == j else F(1) for j in range(3)] for i in range(3)]
    with pytest.raises(NotAnAction):
        validate_group_action(
            [[0, 1], [1, 0]], D2, d3, [[0, 1, 2], [1, 2, 0]]
        )


def test_unfaithful_action_is_lawful():
    # C2 acting trivially satisfies all laws
    ga = validate_group_action([[0, 1], [1, 0]], D2, D2, [[0, 1], [0, 1]])
    assert ga.identity() == 0


def test_validate_rejects_non_left_invariant_metric():
    # on C3, a metric distinguishing the two non-identity elements from
    # the identity asymmetrically cannot be left-invariant
    mult = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    action = [[(y + a) % 3 for y in range(3)] for a in range(3)]
    bad = [
        [F(0), F(1), F(2)],
        [F(1), F(0), F(1)],
        [F(2), F(1), F(0)],
    ]
    d3 = [[F(0) if i == j else F(1) for j in range(3)] for i in range(3)]
    with pytest.raises(NotLeftInvariant):
        validate_group_action(mult, bad, d3, action)


def test_adjust_formula_on_c2_swap():
    ga = c2_swap()
    out = adjust_group_metric(ga)
    # half the old distance plus half the worst displacement: 1/2 + 1/2
    assert out.d_group[0][1] == F(1)
    assert satisfies_encoding_preconditions(out)


def test_adjust_identity_distance_zero():
    for ga in fixed_actions().values():
        out = adjust_group_metric(ga)
        e = out.identity()
        assert out.d_group[e][e] == 0


def test_adjust_establishes_preconditions_on_random_actions():
    rng = random.Random(6)
    for _ in range(25):
        ga = random_action(rng)
        out = adjust_group_metric(ga)
        assert satisfies_encoding_preconditions(out)
        # condition holds with slack or equality on every triple
        for g in range(out.order):
            for h in range(out.order):
                for y in range(out.points):
                    disp = out.d_points[out.act(out.inverse(g), y)][
                        out.act(out.inverse(h), y)
                    ]
                    assert 2 * out.d_group[g][h] >= disp


def test_orbit_encode_requires_adjustment():
    mult = [[0]]
    big = [[F(0), F(3)], [F(3), F(0)]]
    ga = validate_group_action(mult, [[F(0)]], big, [[0, 1]])
    with pytest.raises(PreconditionViolated):
        orbit_encode(ga, 0)


def test_star_distances_forced():
    ga = adjust_group_metric(c2_swap())
    X = orbit_encode(ga, 0)
    k = ga.order
    assert X.dist[k + 0][k + 1] == F(3)  # max(0, 1) + 2


def test_trivial_group_separates_points():
    d2 = [[F(0), F(1)], [F(1), F(0)]]
    ga = adjust_group_metric(permutation_action([], d2))
    x0, x1 = orbit_encode(ga, 0), orbit_encode(ga, 1)
    assert not brute_isometric(x0, x1)


def test_c2_swap_orbit_gives_isometric_encodings():
    ga = adjust_group_metric(c2_swap())
    x0, x1 = orbit_encode(ga, 0), orbit_encode(ga, 1)
    # the explicit witness: swap the group elements, fix the stars
    e = ga.identity()
    g = 1 - e
    forward = [0] * x0.size
    forward[e], forward[g] = g, e
    for n in range(ga.points):
        forward[ga.order + n] = ga.order + n
    assert is_isometry(x0, x1, Bijection(tuple(forward)))
    assert brute_isometric(x0, x1)


def test_orbit_equivalence_matches_encoding_isometry_on_fixed_actions():
    for name, raw in fixed_actions().items():
        ga = adjust_group_metric(raw)
        encodings = [orbit_encode(ga, z) for z in range(ga.points)]
        for z1 in range(ga.points):
            for z2 in range(ga.points):
                expected = orbit_equivalent(ga, z1, z2)
                assert brute_isometric(encodings[z1], encodings[z2]) == expected, name


def test_word_metric_is_left_invariant_by_construction():
    ga = fixed_actions()["s3-natural"]
    assert ga.order == 6
    # validate_group_action already checked left invariance; sanity-check
    # a couple of values: adjacent transpositions at distance 1
    e = ga.identity()
    dists = sorted(set(ga.d_group[e][g] for g in range(ga.order)))
    assert dists[0] == 0 and dists[1] == F(1)
