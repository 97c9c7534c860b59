"""Deterministic and seeded-random object corpora for tests and suites.

Random generation uses `random.Random(seed)` only, so every corpus is
reproducible from its parameters.  Random metrics are built either from
random trees (ultrametric, arbitrary spectra via a random monotone
remap) or with all distances in [1, 2] (the triangle inequality is then
automatic, and such spaces are rarely ultrametric).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .actions import GroupAction, validate_group_action
from .graphs import all_graphs
from .metric import Bijection, MetricSpace, distance_spectrum, relabel, space_from_matrix
from .reductions import RadiusSequence, graph_to_space, tree_to_space
from .trees import Tree, enumerate_trees, validate_tree
from .ultrametric import transfer, universal_discrete


# --- random trees and ultrametric spaces ---------------------------------

def random_tree(rng: random.Random, max_nodes: int, branching: int = 3,
                depth: int = 4) -> Tree:
    """Grow a prefix-closed set by repeatedly adding a random child."""
    nodes = {()}
    target = rng.randint(1, max_nodes)
    while len(nodes) < target:
        candidates = [
            u + (a,)
            for u in nodes
            if len(u) < depth
            for a in range(branching)
            if u + (a,) not in nodes
        ]
        if not candidates:
            break
        nodes.add(rng.choice(candidates))
    return validate_tree(nodes)


def random_monotone_map(rng: random.Random, domain) -> dict[Fraction, Fraction]:
    """Strictly increasing positive rational map defined on ``domain``."""
    out: dict[Fraction, Fraction] = {}
    current = Fraction(rng.randint(1, 6), rng.randint(1, 6))
    for v in sorted(domain):
        out[v] = current
        current = current + Fraction(rng.randint(1, 8), rng.randint(1, 4))
    return out


def random_ultrametric(rng: random.Random, max_size: int) -> MetricSpace:
    T = random_tree(rng, max_size)
    radii = RadiusSequence.harmonic(T.depth + 1)
    X = tree_to_space(T, radii)
    spectrum = distance_spectrum(X)
    if spectrum and rng.random() < 0.8:
        X = transfer(X, random_monotone_map(rng, spectrum))
    if rng.random() < 0.5:
        perm = list(range(X.size))
        rng.shuffle(perm)
        X = relabel(X, Bijection(tuple(perm)))
    return X


def random_ultrametrics(count: int, max_size: int, seed: int = 0) -> list[MetricSpace]:
    rng = random.Random(seed)
    return [random_ultrametric(rng, max_size) for _ in range(count)]


def random_metric(rng: random.Random, size: int) -> MetricSpace:
    """General metric with distances in [1, 2]; triangle holds by range."""
    rows = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            d = 1 + Fraction(rng.randint(0, 8), 8)
            rows[i][j] = rows[j][i] = d
    return space_from_matrix(rows)


# --- deterministic space corpus for encoding suites ----------------------

def standard_spaces(max_size: int) -> list[MetricSpace]:
    """Fixed mixed corpus: tree images (both radius kinds), universal
    discrete spaces, graph images, transferred and relabelled variants."""
    spaces: list[MetricSpace] = []
    for T in enumerate_trees(4, 2, 3):
        for radii in (RadiusSequence.harmonic(T.depth + 1),
                      RadiusSequence.dyadic(T.depth + 1)):
            spaces.append(tree_to_space(T, radii))
    spaces.append(universal_discrete([Fraction(1)], 2))
    spaces.append(universal_discrete([Fraction(1), Fraction(2)], 2))
    spaces.append(universal_discrete([Fraction(1), Fraction(2), Fraction(3)], 2))
    spaces.append(universal_discrete([Fraction(1, 2), Fraction(3, 2)], 3))
    for n in range(1, 4):
        spaces.extend(graph_to_space(G) for G in all_graphs(n))
    # A transferred copy and a reversed relabelling broaden the spectra
    # and guarantee isometric pairs in the corpus.
    extras: list[MetricSpace] = []
    for X in spaces:
        if X.is_ultrametric and X.size in (3, 4) and distance_spectrum(X):
            rho = {v: 2 * v for v in distance_spectrum(X)}
            extras.append(transfer(X, rho))
    for X in spaces[:6]:
        perm = tuple(reversed(range(X.size)))
        extras.append(relabel(X, Bijection(perm)))
    rng = random.Random(7)
    extras.extend(random_metric(rng, n) for n in (3, 4, 5, 6))
    spaces.extend(extras)
    return [X for X in spaces if X.size <= max_size]


def standard_ultrametric_spaces(max_size: int) -> list[MetricSpace]:
    return [X for X in standard_spaces(max_size) if X.is_ultrametric]


# --- group actions --------------------------------------------------------

def _compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _invert(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def permutation_action(generators, d_points) -> GroupAction:
    """Closure of the generators acting on the points of ``d_points``.

    The group metric is the word metric of the symmetrised generating
    set, which is left-invariant by construction.  The trivial group
    (no generators) gets the zero metric on one element.
    """
    m = len(d_points)
    ident = tuple(range(m))
    gens = {tuple(int(v) for v in g) for g in generators}
    gens |= {_invert(g) for g in gens}
    elements = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = _compose(g, a)
                if c not in elements:
                    elements.add(c)
                    new.append(c)
        frontier = new
    elems = sorted(elements)
    index = {p: i for i, p in enumerate(elems)}
    mult = [[index[_compose(a, b)] for b in elems] for a in elems]

    norm = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = _compose(g, a)
                if c not in norm:
                    norm[c] = norm[a] + 1
                    new.append(c)
        frontier = new
    d_group = [
        [Fraction(norm[_compose(_invert(a), b)]) for b in elems] for a in elems
    ]
    action = [list(p) for p in elems]
    return validate_group_action(mult, d_group, d_points, action)


def fixed_actions() -> dict[str, GroupAction]:
    """The four reference actions used by the orbit-encoding suite."""
    half = Fraction(1, 2)
    d2 = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    d3 = [
        [Fraction(0), half, Fraction(3, 4)],
        [half, Fraction(0), Fraction(1)],
        [Fraction(3, 4), Fraction(1), Fraction(0)],
    ]
    return {
        "trivial-3": permutation_action([], d3),
        "c2-swap": permutation_action([(1, 0)], d2),
        "c3-rotation": permutation_action([(1, 2, 0)], d3),
        "s3-natural": permutation_action([(1, 0, 2), (0, 2, 1)], d3),
    }


def random_action(rng: random.Random, max_points: int = 4) -> GroupAction:
    """Random permutation group on a random small metric space."""
    m = rng.randint(2, max_points)
    perms = []
    for _ in range(rng.randint(1, 2)):
        p = list(range(m))
        rng.shuffle(p)
        perms.append(tuple(p))
    return permutation_action(perms, random_metric(rng, m).dist)
