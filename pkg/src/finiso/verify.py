"""Reduction verification harness and finite jump-operator semantics.

A reduction claim "x E y iff f(x) F f(y)" is checked literally: run both
oracles on every unordered pair of a finite corpus (reflexive pairs
included) and report the first mismatch in corpus order, which is then
independently re-checkable.  The jump operators compare finite tuples up
to an equivalence oracle: set-of-classes equality, and bijective
matching via augmenting paths.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Any, Callable

from . import graphs as graphs_mod
from . import metric as metric_mod
from . import trees as trees_mod
from .errors import OracleFailure, UsageError
from .reductions import RadiusSequence, graph_to_space, tree_to_space


@dataclass(frozen=True)
class EquivalenceOracle:
    """Total symmetric decision procedure over one object kind.

    ``decide`` is the direct pairwise procedure.  ``key``, when present,
    is a complete invariant consistent with it (equal keys iff
    equivalent); :meth:`same` uses the key when available since repeated
    corpus sweeps then cost one canonicalisation per object instead of
    one search per pair.
    """

    name: str
    kind: str
    decide: Callable[[Any, Any], bool]
    key: Callable[[Any], Any] | None = None

    def same(self, a, b) -> bool:
        if self.key is not None:
            return self.key(a) == self.key(b)
        return self.decide(a, b)


@dataclass(frozen=True)
class Counterexample:
    index_left: int
    index_right: int
    left: Any
    right: Any
    source_equivalent: bool
    image_equivalent: bool


@dataclass(frozen=True)
class ReductionReport:
    pairs_checked: int
    counterexample: Counterexample | None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_reduction(corpus, f, E: EquivalenceOracle, F: EquivalenceOracle,
                     workers: int = 1) -> ReductionReport:
    """Check x E y <=> f(x) F f(y) on every unordered pair of the corpus.

    Pair order is (0,0), (0,1), ..., (0,n-1), (1,1), ...; the report
    carries the first counterexample in that order regardless of worker
    count.  Oracle or map exceptions surface as OracleFailure.
    """
    items = list(corpus)
    n = len(items)
    try:
        images = [f(x) for x in items]
    except Exception as exc:  # noqa: BLE001 - reported with context
        raise OracleFailure("map", exc) from exc

    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def check(pair):
        i, j = pair
        try:
            e = bool(E.same(items[i], items[j]))
        except Exception as exc:  # noqa: BLE001
            raise OracleFailure(E.name, exc) from exc
        try:
            fv = bool(F.same(images[i], images[j]))
        except Exception as exc:  # noqa: BLE001
            raise OracleFailure(F.name, exc) from exc
        if e != fv:
            return Counterexample(i, j, items[i], items[j], e, fv)
        return None

    if workers <= 1:
        for idx, pair in enumerate(pairs):
            ce = check(pair)
            if ce is not None:
                return ReductionReport(idx + 1, ce)
        return ReductionReport(len(pairs), None)

    # Workers race over chunks; the first counterexample is still defined
    # by pair order, so results reconcile to the minimal pair index.
    chunk = max(1, len(pairs) // (workers * 8))
    first: tuple[int, Counterexample] | None = None
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        def run_chunk(start):
            for idx in range(start, min(start + chunk, len(pairs))):
                ce = check(pairs[idx])
                if ce is not None:
                    return idx, ce
            return None
        for res in pool.map(run_chunk, range(0, len(pairs), chunk)):
            if res is not None and (first is None or res[0] < first[0]):
                first = res
    if first is None:
        return ReductionReport(len(pairs), None)
    return ReductionReport(first[0] + 1, first[1])


# --- jump operators on finite tuples -------------------------------------

def eplus_equal(xs, ys, E: EquivalenceOracle) -> bool:
    """Equality of the sets of E-classes enumerated by the two tuples."""
    xs, ys = list(xs), list(ys)
    return all(any(E.same(x, y) for y in ys) for x in xs) and all(
        any(E.same(y, x) for x in xs) for y in ys
    )


def eomega_equal(xs, ys, E: EquivalenceOracle) -> bool:
    """Existence of an index bijection matching entries up to E.

    Unequal lengths fail immediately; otherwise this is a perfect
    matching question in the compatibility bipartite graph, solved with
    augmenting paths.
    """
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return False
    n = len(xs)
    compat = [[E.same(xs[i], ys[j]) for j in range(n)] for i in range(n)]
    match_of_y = [-1] * n

    def augment(i, visited) -> bool:
        for j in range(n):
            if compat[i][j] and not visited[j]:
                visited[j] = True
                if match_of_y[j] < 0 or augment(match_of_y[j], visited):
                    match_of_y[j] = i
                    return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return False
    return True


def dedup_by_oracle(xs, E: EquivalenceOracle) -> tuple:
    """Keep the first representative of each E-class, in tuple order.

    Together with the bijective-matching comparison this realises the
    set-of-classes semantics: two tuples enumerate the same classes iff
    their deduplications match bijectively.
    """
    out: list = []
    for x in xs:
        if not any(E.same(x, r) for r in out):
            out.append(x)
    return tuple(out)


def check_equivalence_properties(E: EquivalenceOracle, sample) -> None:
    """Spot-check reflexivity, symmetry, and transitivity on a sample."""
    items = list(sample)
    for x in items:
        if not E.same(x, x):
            raise AssertionError(f"{E.name}: not reflexive on {x!r}")
    for x in items:
        for y in items:
            if E.same(x, y) != E.same(y, x):
                raise AssertionError(f"{E.name}: not symmetric on {x!r}, {y!r}")
    for x in items:
        for y in items:
            if not E.same(x, y):
                continue
            for z in items:
                if E.same(y, z) and not E.same(x, z):
                    raise AssertionError(
                        f"{E.name}: not transitive on {x!r}, {y!r}, {z!r}"
                    )


# --- built-in oracles, maps, and corpora for the CLI ----------------------

def isometry_oracle(mode: str = "exhaustive") -> EquivalenceOracle:
    decide = lambda a, b: metric_mod.find_isometry(a, b, mode=mode) is not None
    key = metric_mod.isometry_key if mode == "exhaustive" else None
    return EquivalenceOracle(f"isometry[{mode}]", "space", decide, key)


def tree_iso_oracle(mode: str = "exhaustive") -> EquivalenceOracle:
    decide = lambda a, b: trees_mod.find_tree_isomorphism(a, b, mode=mode) is not None
    key = trees_mod.tree_key if mode == "exhaustive" else trees_mod.tree_canonical
    return EquivalenceOracle(f"tree-iso[{mode}]", "tree", decide, key)


def graph_iso_oracle() -> EquivalenceOracle:
    decide = lambda a, b: graphs_mod.graph_isomorphic(a, b) is not None
    return EquivalenceOracle("graph-iso", "graph", decide, graphs_mod.graph_key)


def equality_oracle() -> EquivalenceOracle:
    return EquivalenceOracle("equality", "any", lambda a, b: a == b, lambda a: a)


ORACLES = {
    "tree-iso": tree_iso_oracle,
    "graph-iso": graph_iso_oracle,
    "isometry": isometry_oracle,
    "equality": equality_oracle,
}


def _tree2space_default(T):
    return tree_to_space(T, RadiusSequence.harmonic(T.depth + 1))


MAPS = {
    "tree2space": _tree2space_default,
    "graph2space": graph_to_space,
    "identity": lambda x: x,
}


def named_oracle(name: str) -> EquivalenceOracle:
    if name not in ORACLES:
        raise UsageError(f"unknown oracle {name!r}; known: {sorted(ORACLES)}")
    return ORACLES[name]()


def named_map(name: str):
    if name not in MAPS:
        raise UsageError(f"unknown map {name!r}; known: {sorted(MAPS)}")
    return MAPS[name]


def named_corpus(spec: str, seed: int = 0) -> list:
    """Built-in corpora: "trees:N[:K[:D]]", "graphs:N", "random-ultrametrics:C:S".

    Tree bounds default to branching 3, depth 3.  Graph corpora contain
    every labelled graph on 1..N vertices.  The random corpus is
    generated deterministically from the seed.
    """
    from . import corpus as corpus_mod

    parts = spec.split(":")
    kind, args = parts[0], parts[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise UsageError(f"bad corpus spec {spec!r}") from None
    if kind == "trees":
        if not 1 <= len(nums) <= 3:
            raise UsageError("trees corpus takes 1-3 integer parameters")
        max_nodes = nums[0]
        branching = nums[1] if len(nums) > 1 else 3
        depth = nums[2] if len(nums) > 2 else 3
        return list(trees_mod.enumerate_trees(max_nodes, branching, depth))
    if kind == "graphs":
        if len(nums) != 1:
            raise UsageError("graphs corpus takes exactly 1 parameter")
        out = []
        for n in range(1, nums[0] + 1):
            out.extend(graphs_mod.all_graphs(n))
        return out
    if kind == "random-ultrametrics":
        if len(nums) != 2:
            raise UsageError("random-ultrametrics corpus takes count:maxsize")
        return corpus_mod.random_ultrametrics(nums[0], nums[1], seed)
    raise UsageError(f"unknown corpus kind {kind!r}")
