"""Finite relational structures and their isomorphism.

A structure is a universe 0..n-1 plus named relations, each a set of
tuples of a declared arity.  Isomorphism search mirrors the metric-space
API: ``pruned`` backtracks with degree-profile pruning, ``exhaustive``
enumerates every universe bijection.  Relation names are plain strings;
encoders that subscript names by rationals write them in lowest terms
("P_1/2"), and name equality is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import search
from .errors import SignatureMismatch
from .metric import Bijection


@dataclass(frozen=True)
class RelationalStructure:
    size: int
    relations: tuple[tuple[str, int, frozenset[tuple[int, ...]]], ...]

    @staticmethod
    def build(size: int, relations) -> "RelationalStructure":
        if size < 1:
            raise ValueError("universe must be nonempty")
        normd = []
        seen = set()
        for name, arity, tuples in relations:
            name = str(name)
            if name in seen:
                raise ValueError(f"duplicate relation name {name!r}")
            seen.add(name)
            tset = frozenset(tuple(int(v) for v in t) for t in tuples)
            for t in tset:
                if len(t) != arity:
                    raise ValueError(f"tuple {t} has arity != {arity} in {name!r}")
                if any(v < 0 or v >= size for v in t):
                    raise ValueError(f"tuple {t} out of universe range in {name!r}")
            normd.append((name, int(arity), tset))
        normd.sort(key=lambda r: r[0])
        return RelationalStructure(size, tuple(normd))

    def signature(self):
        return tuple((name, arity) for name, arity, _ in self.relations)

    def __repr__(self):
        rels = ", ".join(f"{n}/{a}" for n, a, _ in self.relations)
        return f"RelationalStructure(n={self.size}, [{rels}])"


def is_structure_isomorphism(A: RelationalStructure, B: RelationalStructure,
                             bij: Bijection) -> bool:
    """Certificate check: the bijection maps each tuple set exactly onto B's."""
    if A.size != B.size or bij.size != A.size or A.signature() != B.signature():
        return False
    f = bij.forward
    for (_, _, ta), (_, _, tb) in zip(A.relations, B.relations):
        if frozenset(tuple(f[v] for v in t) for t in ta) != tb:
            return False
    return True


def _combined_matrix(A: RelationalStructure):
    """Single integer matrix encoding all unary/binary relations as bitmasks.

    Returns None when some relation has arity > 2 or there are too many
    relations for the bit budget; callers then fall back to the generic
    per-permutation check.
    """
    if any(arity > 2 for _, arity, _ in A.relations):
        return None
    if len(A.relations) > 60:
        return None
    n = A.size
    m = [[0] * n for _ in range(n)]
    # One bit per relation: unary membership sits on the diagonal, binary
    # tuples wherever they fall.  Distinct relations use distinct bits, so
    # a diagonal can carry both kinds without ambiguity.
    for bit, (_, arity, tuples) in enumerate(A.relations):
        for t in tuples:
            if arity == 1:
                m[t[0]][t[0]] |= 1 << bit
            else:
                m[t[0]][t[1]] |= 1 << bit
    return m


def _profile(A: RelationalStructure, i: int):
    prof = []
    for _, arity, tuples in A.relations:
        counts = tuple(sorted(
            (pos for t in tuples for pos, v in enumerate(t) if v == i)
        ))
        prof.append((len(counts), counts))
    return tuple(prof)


def structure_isomorphic(A: RelationalStructure, B: RelationalStructure,
                         mode: str = "pruned") -> Bijection | None:
    """Universe bijection preserving every relation both ways, or None.

    Structures must share relation names and arities; otherwise
    SignatureMismatch is raised (they are not comparable, as opposed to
    comparable-but-nonisomorphic).
    """
    if mode not in ("pruned", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    if A.signature() != B.signature():
        raise SignatureMismatch(f"{A.signature()} vs {B.signature()}")
    if A.size != B.size:
        return None
    if mode == "exhaustive":
        ma, mb = _combined_matrix(A), _combined_matrix(B)
        if ma is not None and mb is not None:
            p = search.find_matching_permutation(ma, mb)
        else:
            p = _exhaustive_generic(A, B)
        if p is None:
            return None
        bij = Bijection(p)
        assert is_structure_isomorphism(A, B, bij)
        return bij
    return _pruned(A, B)


def _exhaustive_generic(A, B):
    import itertools

    for perm in itertools.permutations(range(A.size)):
        bij = Bijection(perm)
        if is_structure_isomorphism(A, B, bij):
            return perm
    return None


def _pruned(A: RelationalStructure, B: RelationalStructure) -> Bijection | None:
    n = A.size
    prof_a = [_profile(A, i) for i in range(n)]
    prof_b = [_profile(B, j) for j in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return None
    candidates = [[j for j in range(n) if prof_b[j] == prof_a[i]] for i in range(n)]

    # Binary relations admit incremental consistency checks; higher
    # arities are verified once the map is complete.
    binary = [(ta, tb) for (_, ar, ta), (_, _, tb) in zip(A.relations, B.relations)
              if ar == 2]
    unary = [(ta, tb) for (_, ar, ta), (_, _, tb) in zip(A.relations, B.relations)
             if ar == 1]
    higher = [(ta, tb) for (_, ar, ta), (_, _, tb) in zip(A.relations, B.relations)
              if ar > 2]

    assignment = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for ta, tb in unary:
            if ((i,) in ta) != ((j,) in tb):
                return False
        for ta, tb in binary:
            if ((i, i) in ta) != ((j, j) in tb):
                return False
            for k in range(i):
                fk = assignment[k]
                if ((i, k) in ta) != ((j, fk) in tb):
                    return False
                if ((k, i) in ta) != ((fk, j) in tb):
                    return False
        return True

    def extend(i: int) -> bool:
        if i == n:
            if not higher:
                return True
            return is_structure_isomorphism(A, B, Bijection(tuple(assignment)))
        for j in candidates[i]:
            if used[j] or not consistent(i, j):
                continue
            assignment[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
            assignment[i] = -1
        return False

    if extend(0):
        bij = Bijection(tuple(assignment))
        assert is_structure_isomorphism(A, B, bij)
        return bij
    return None


@lru_cache(maxsize=65536)
def structure_key(A: RelationalStructure):
    """Exhaustive canonical key for unary/binary structures.

    Keys are comparable only between structures of equal signature; the
    signature is part of the key.  None for higher-arity structures.
    """
    m = _combined_matrix(A)
    if m is None:
        return None
    return (A.size, A.signature(), search.canonical_pattern(m))
