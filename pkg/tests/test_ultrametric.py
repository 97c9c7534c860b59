"""Ultrametric structure theory: partitions, codes, spheres, transfer."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from finiso.codes import LEAF, render_code
from finiso.corpus import random_ultrametrics
from finiso.errors import DomainGap, NotMonotone, NotUltrametric
from finiso.metric import (
    Bijection,
    distance_spectrum,
    find_isometry,
    relabel,
    restrict,
    space_from_matrix,
)
from finiso.structures import structure_isomorphic
from finiso.ultrametric import (
    anchored_isometry_check,
    ball_partition,
    ball_structure,
    canonical_code,
    sphere_decompose,
    transfer,
    universal_discrete,
)

from oracles import brute_isometric

F = Fraction


def space(rows):
    return space_from_matrix(rows)


@pytest.fixture
def cherry():
    # d(a,b) = 1, d(a,c) = d(b,c) = 2
    return space([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


@pytest.fixture
def uniform3():
    return space([[0, 2, 2], [2, 0, 2], [2, 2, 0]])


def test_ball_partition_examples(cherry):
    assert ball_partition(cherry, F(2)) == ((0, 1), (2,))
    assert ball_partition(cherry, F(3)) == ((0, 1, 2),)
    assert ball_partition(space([[0]]), F(1)) == ((0,),)


def test_ball_partition_requires_ultrametric():
    X = space([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert not X.is_ultrametric
    with pytest.raises(NotUltrametric):
        ball_partition(X, F(1))


def test_ball_partition_blocks_partition_the_space(cherry):
    for r in sorted(distance_spectrum(cherry)) + [F(5)]:
        blocks = ball_partition(cherry, r)
        flat = sorted(i for b in blocks for i in b)
        assert flat == list(range(cherry.size))


def test_canonical_code_examples(cherry, uniform3):
    assert canonical_code(space([[0]])) is LEAF
    assert render_code(canonical_code(uniform3)) == "(2/1 leaf leaf leaf)"
    assert render_code(canonical_code(cherry)) == "(2/1 (1/1 leaf leaf) leaf)"
    assert canonical_code(cherry) != canonical_code(uniform3)


def test_canonical_code_invariant_under_relabeling(uniform3, cherry):
    for X in (uniform3, cherry):
        for perm in itertools.permutations(range(X.size)):
            Y = relabel(X, Bijection(perm))
            assert canonical_code(Y) == canonical_code(X)


def test_code_equality_matches_brute_isometry_on_random_corpus():
    spaces = random_ultrametrics(25, 5, seed=4)
    for X in spaces:
        for Y in spaces:
            assert (canonical_code(X) == canonical_code(Y)) == brute_isometric(X, Y)


def test_ball_structure_singleton():
    bs = ball_structure(space([[0]]))
    assert bs.balls == (frozenset({0}),)
    assert bs.inclusion == {(0, 0)}
    assert bs.thresholds == (F(1),)


def test_ball_structure_two_points():
    bs = ball_structure(space([[0, 1], [1, 0]]))
    assert bs.thresholds == (F(1), F(2))
    assert set(bs.balls) == {frozenset({0}), frozenset({1}), frozenset({0, 1})}
    small = dict(bs.small_diameter)
    # radius-1 balls are the singletons, radius-2 ball is everything
    assert small[F(1)] == {0, 1}
    assert small[F(2)] == {0, 1, 2}


def test_ball_structure_isomorphism_matches_isometry():
    spaces = random_ultrametrics(12, 5, seed=9)
    for X in spaces:
        for Y in spaces:
            A, B = ball_structure(X).as_structure(), ball_structure(Y).as_structure()
            if A.signature() != B.signature():
                verdict = False
            else:
                verdict = structure_isomorphic(A, B) is not None
            assert verdict == brute_isometric(X, Y)


def test_sphere_decompose_examples(cherry):
    assert sphere_decompose(space([[0]]), 0) == []
    assert sphere_decompose(cherry, 0) == [(F(1), (1,)), (F(2), (2,))]
    assert sphere_decompose(cherry, 2) == [(F(2), (0, 1))]


def test_sphere_decompose_partitions(cherry):
    for c in range(cherry.size):
        pts = [p for _, block in sphere_decompose(cherry, c) for p in block]
        assert sorted(pts) == [i for i in range(cherry.size) if i != c]


def test_anchored_examples(cherry, uniform3):
    s = space([[0]])
    assert anchored_isometry_check(s, s)
    shuffled = relabel(cherry, Bijection((2, 0, 1)))
    assert anchored_isometry_check(cherry, shuffled)
    assert not anchored_isometry_check(cherry, uniform3)


def test_anchored_agrees_with_brute_isometry():
    spaces = random_ultrametrics(20, 6, seed=21)
    for X in spaces:
        for Y in spaces:
            assert anchored_isometry_check(X, Y) == brute_isometric(X, Y)


def test_transfer_identity(cherry):
    rho = {v: v for v in distance_spectrum(cherry)}
    assert transfer(cherry, rho).dist == cherry.dist


def test_transfer_doubling_preserves_class(cherry):
    rho = {F(1): F(2), F(2): F(4)}
    out = transfer(cherry, rho)
    assert distance_spectrum(out) == {F(2), F(4)}
    other = transfer(relabel(cherry, Bijection((1, 2, 0))), rho)
    assert brute_isometric(out, other)


def test_transfer_not_monotone(cherry):
    with pytest.raises(NotMonotone) as err:
        transfer(cherry, {F(1): F(3), F(2): F(2)})
    assert (err.value.a, err.value.b) == (F(1), F(2))


def test_transfer_domain_gap(cherry):
    with pytest.raises(DomainGap):
        transfer(cherry, {F(1): F(3)})


def test_transfer_preserves_verdicts_both_ways():
    spaces = random_ultrametrics(8, 5, seed=33)
    rng = random.Random(5)
    for X in spaces:
        for Y in spaces:
            dom = distance_spectrum(X) | distance_spectrum(Y)
            if not dom:
                continue
            from finiso.corpus import random_monotone_map

            rho = random_monotone_map(rng, dom)
            assert brute_isometric(X, Y) == brute_isometric(
                transfer(X, rho), transfer(Y, rho)
            )


def test_universal_discrete_examples():
    two = universal_discrete([F(1)], 2)
    assert two.size == 2 and distance_spectrum(two) == {F(1)}

    four = universal_discrete([F(1), F(2)], 2)
    assert four.size == 4
    assert four.dist[0][1] == F(1)  # the two copies at level 1
    for i in (0, 1):
        for j in (2, 3):
            assert four.dist[i][j] == F(2)

    nine = universal_discrete([F(1), F(2), F(3)], 3)
    assert distance_spectrum(nine) == {F(1), F(2), F(3)}
    assert nine.is_ultrametric


def test_max_inequality_consequence_on_corpus():
    # d(x,y) > d(y,z) forces d(x,z) = d(x,y), on every triple
    for X in random_ultrametrics(15, 6, seed=2):
        n = X.size
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if X.dist[x][y] > X.dist[y][z]:
                        assert X.dist[x][z] == X.dist[x][y]


def test_balls_nested_or_disjoint_on_corpus():
    for X in random_ultrametrics(10, 6, seed=14):
        radii = sorted(distance_spectrum(X)) + [F(10)]
        balls = [
            frozenset(b)
            for r in radii
            for b in ball_partition(X, r)
        ]
        for a in balls:
            for b in balls:
                assert a <= b or b <= a or not (a & b)


def test_dense_subset_analogue_spectra_match():
    # any subset hitting every block of every realized-radius partition
    # realizes the full spectrum
    for X in random_ultrametrics(8, 5, seed=77):
        n = X.size
        radii = sorted(distance_spectrum(X))
        for mask in range(1, 1 << n):
            subset = tuple(i for i in range(n) if mask >> i & 1)
            dense = all(
                any(p in block for p in subset)
                for r in radii
                for block in ball_partition(X, r)
            )
            if dense:
                Y = restrict(X, subset)
                assert distance_spectrum(Y) == distance_spectrum(X)
