"""Constructions between object kinds and their defining properties."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from finiso.errors import (
    InsufficientThresholds,
    NotAnIsometry,
    RadiusTooSmall,
    SequenceTooShort,
)
from finiso.graphs import Graph, all_graphs
from finiso.metric import (
    Bijection,
    distance_spectrum,
    find_isometry,
    realized_by,
    relabel,
    space_from_matrix,
)
from finiso.reductions import (
    RadiusSequence,
    default_thresholds,
    discrete_to_structure,
    graph_to_space,
    gromov_full,
    gromov_invariant,
    repair_isometry_to_tree_iso,
    sum_space,
    tree_to_space,
)
from finiso.structures import structure_isomorphic
from finiso.trees import is_tree_isomorphism, validate_tree
from finiso.ultrametric import ball_partition

from oracles import brute_graph_isomorphic, brute_isometric, brute_isometries

F = Fraction
R21 = RadiusSequence.of([2, 1])
R321 = RadiusSequence.of([3, 2, 1])


def T(*nodes):
    return validate_tree(nodes)


# --- radius sequences ---------------------------------------------------------

def test_radius_sequence_validation():
    with pytest.raises(ValueError):
        RadiusSequence.of([1, 2])
    with pytest.raises(ValueError):
        RadiusSequence.of([2, 0])
    with pytest.raises(ValueError):
        RadiusSequence.of([])
    harmonic = RadiusSequence.harmonic(4)
    assert harmonic.values == (F(2), F(3, 2), F(4, 3), F(5, 4))
    dyadic = RadiusSequence.dyadic(3)
    assert dyadic.values == (F(1), F(1, 2), F(1, 4))


# --- tree metric ----------------------------------------------------------------

def test_tree_to_space_examples():
    single = tree_to_space(T(()), R21)
    assert single.size == 1

    cherry = tree_to_space(T((), (0,), (1,)), R21)
    assert cherry.size == 3
    assert all(
        cherry.dist[i][j] == F(2) for i in range(3) for j in range(3) if i != j
    )

    chain = tree_to_space(T((), (0,), (0, 0)), R21)
    # node order: (), (0), (0,0)
    assert chain.dist[0][1] == F(2)
    assert chain.dist[0][2] == F(2)
    assert chain.dist[1][2] == F(1)


def test_tree_to_space_too_short():
    with pytest.raises(SequenceTooShort):
        tree_to_space(T((), (0,), (0, 0)), RadiusSequence.of([2]))


def test_tree_to_space_crucial_properties():
    # realized distances at u sandwich the node length; the length radius
    # is realized iff u is not terminal; inclusion shows as d = r_{len(u)}
    trees = [
        T(()),
        T((), (0,)),
        T((), (0,), (1,), (0, 0)),
        T((), (0,), (0, 0), (0, 1), (1,)),
    ]
    for t in trees:
        radii = RadiusSequence.harmonic(t.depth + 1)
        X = tree_to_space(t, radii)
        terminals = set(t.terminals())
        for i, u in enumerate(t.nodes):
            realized = realized_by(X, i)
            below = {radii[b] for b in range(len(u))}
            assert below <= realized <= below | {radii[len(u)]}
            assert (radii[len(u)] in realized) == (u not in terminals)
            for j, v in enumerate(t.nodes):
                if u == v:
                    continue
                is_strict_prefix = len(u) < len(v) and v[: len(u)] == u
                assert (X.dist[i][j] == radii[len(u)]) == is_strict_prefix


def test_tree_metric_reduces_isomorphism_to_isometry_small():
    from finiso.trees import enumerate_trees
    from oracles import brute_tree_isomorphic

    trees = list(enumerate_trees(4, 2, 3))
    for radii_len4 in (RadiusSequence.harmonic(4), RadiusSequence.dyadic(4)):
        spaces = [tree_to_space(t, radii_len4) for t in trees]
        for (t1, x1), (t2, x2) in itertools.combinations(zip(trees, spaces), 2):
            assert brute_tree_isomorphic(t1, t2) == brute_isometric(x1, x2)


# --- switching-pair repair ---------------------------------------------------------

def test_repair_fixes_the_forced_swap():
    t = T((), (0,))
    swap = Bijection((1, 0))  # the root and its child trade places
    mapping = repair_isometry_to_tree_iso(t, t, R21, swap)
    assert mapping == {(): (), (0,): (0,)}


def test_repair_keeps_actual_isomorphisms():
    t = T((), (0,), (1,))
    phi = Bijection((0, 2, 1))  # swap the two leaves: a genuine automorphism
    mapping = repair_isometry_to_tree_iso(t, t, R21, phi)
    assert mapping == {(): (), (0,): (1,), (1,): (0,)}


def test_repair_rejects_non_isometry():
    t = T((), (0,), (0, 0))
    with pytest.raises(NotAnIsometry):
        repair_isometry_to_tree_iso(t, t, R321, Bijection((1, 0, 2)))


def test_every_brute_isometry_repairs_to_isomorphism():
    from finiso.trees import enumerate_trees

    trees = list(enumerate_trees(4, 2, 3))
    for t1 in trees:
        for t2 in trees:
            if t1.size != t2.size:
                continue
            radii = RadiusSequence.harmonic(max(t1.depth, t2.depth) + 1)
            x1, x2 = tree_to_space(t1, radii), tree_to_space(t2, radii)
            for perm in brute_isometries(x1, x2):
                mapping = repair_isometry_to_tree_iso(t1, t2, radii, Bijection(perm))
                assert is_tree_isomorphism(t1, t2, mapping)


# --- graph encoding ------------------------------------------------------------------

def test_graph_to_space_values():
    k2 = graph_to_space(Graph.build(2, [(0, 1)]))
    assert k2.dist[0][1] == F(1)
    e2 = graph_to_space(Graph.build(2, []))
    assert e2.dist[0][1] == F(2)


def test_path_not_ultrametric_but_valid():
    p3 = graph_to_space(Graph.build(3, [(0, 1), (1, 2)]))
    assert not p3.is_ultrametric
    k3 = graph_to_space(Graph.build(3, [(0, 1), (1, 2), (0, 2)]))
    assert k3.is_ultrametric
    assert not brute_isometric(p3, k3)


def test_graph_iso_matches_image_isometry_up_to_four():
    graphs = [g for n in range(1, 5) for g in all_graphs(n)]
    spaces = [graph_to_space(g) for g in graphs]
    rng = random.Random(1)
    idx = list(range(len(graphs)))
    for _ in range(400):
        i, j = rng.choice(idx), rng.choice(idx)
        assert brute_graph_isomorphic(graphs[i], graphs[j]) == brute_isometric(
            spaces[i], spaces[j]
        )


# --- threshold encoding -----------------------------------------------------------------

def test_disc2struct_singleton():
    X = space_from_matrix([[0]])
    A = discrete_to_structure(X, [F(1)])
    assert A.size == 1
    assert A.relations == (("P_1/1", 2, frozenset({(0, 0)})),)


def test_disc2struct_two_points():
    X = space_from_matrix([[0, 1], [1, 0]])
    A = discrete_to_structure(X, [F(1), F(2)])
    rels = dict((name, tuples) for name, _, tuples in A.relations)
    assert rels["P_1/1"] == {(0, 0), (1, 1)}
    assert rels["P_2/1"] == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_disc2struct_insufficient_thresholds():
    X = space_from_matrix([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    with pytest.raises(InsufficientThresholds):
        discrete_to_structure(X, [F(3)])
    with pytest.raises(InsufficientThresholds):
        discrete_to_structure(X, [F(1), F(2)])  # nothing above the max


def test_disc2struct_isomorphism_iff_isometry():
    from finiso.corpus import standard_spaces

    spaces = [X for X in standard_spaces(4)][:24]
    for X in spaces:
        for Y in spaces:
            qs = default_thresholds(X, Y)
            A = discrete_to_structure(X, qs)
            B = discrete_to_structure(Y, qs)
            got = structure_isomorphic(A, B) is not None if A.size == B.size else False
            assert got == brute_isometric(X, Y)


# --- sums -------------------------------------------------------------------------------

def make(rows):
    return space_from_matrix(rows)


PARTS = {
    "single": make([[0]]),
    "pair": make([[0, 1], [1, 0]]),
    "triple": make([[0, 2, 2], [2, 0, 2], [2, 2, 0]]),
}


def test_sum_single_part_isometric_to_part():
    out = sum_space([PARTS["pair"]], F(5))
    assert brute_isometric(out, PARTS["pair"])


def test_sum_commutes_up_to_isometry():
    a = sum_space([PARTS["pair"], PARTS["triple"]], F(5))
    b = sum_space([PARTS["triple"], PARTS["pair"]], F(5))
    assert brute_isometric(a, b)


def test_sum_multiplicity_matters():
    a = sum_space([PARTS["pair"], PARTS["pair"]], F(5))
    b = sum_space([PARTS["pair"], PARTS["triple"]], F(5))
    assert not brute_isometric(a, b)


def test_sum_radius_too_small():
    with pytest.raises(RadiusTooSmall):
        sum_space([PARTS["triple"]], F(2))


def test_sum_parts_recoverable_as_balls():
    out = sum_space([PARTS["pair"], PARTS["triple"], PARTS["single"]], F(4))
    blocks = ball_partition(out, F(4))
    assert sorted(len(b) for b in blocks) == [1, 2, 3]


# --- distance-matrix invariants ------------------------------------------------------------

def test_gromov_level_zero():
    X = make([[0, 1], [1, 0]])
    assert gromov_invariant(X, 0) == {((F(0),),)}


def test_gromov_two_points_level_one():
    X = make([[0, 1], [1, 0]])
    zero = ((F(0), F(0)), (F(0), F(0)))
    edge = ((F(0), F(1)), (F(1), F(0)))
    assert gromov_invariant(X, 1) == {zero, edge}


def test_gromov_full_complete_invariant_small():
    from finiso.corpus import standard_spaces

    spaces = [X for X in standard_spaces(4)][:20]
    for X in spaces:
        for Y in spaces:
            assert (gromov_full(X) == gromov_full(Y)) == brute_isometric(X, Y)


def test_gromov_relabeling_invariance_and_consistency():
    X = make([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    rng = random.Random(8)
    for _ in range(10):
        perm = list(range(X.size))
        rng.shuffle(perm)
        assert gromov_full(relabel(X, Bijection(tuple(perm)))) == gromov_full(X)
    levels = gromov_full(X)
    for n in range(len(levels) - 1):
        for mat in levels[n]:
            extensions = {
                tuple(tuple(row[: n + 1]) for row in big[: n + 1])
                for big in levels[n + 1]
            }
            assert mat in extensions
