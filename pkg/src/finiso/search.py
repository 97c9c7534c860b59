"""Exhaustive bijection search over integer pattern matrices.

Isometry of finite metric spaces, isomorphism of prefix trees, and
isomorphism of (unary/binary) relational structures are all instances of
one problem: given square integer matrices ``A`` and ``B``, find a
permutation ``p`` with ``A[i][j] == B[p[i]][p[j]]`` for all ``i, j``.
The matrices encode distances (as spectrum positions), the inclusion
order, or relation membership bitmasks; only entry equality matters, so
the integer encoding is exact.

Enumeration is over *all* n! permutations in lexicographic order,
vectorised with numpy and chunked to bound memory.  The same sweep also
yields a canonical form (the lexicographically least relabelled
pattern), which is a complete invariant: two matrices admit a matching
permutation if and only if their canonical forms coincide.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

# Permutation blocks are regenerated beyond this size instead of cached.
_CACHE_MAX_N = 8
_CHUNK = 40320


@lru_cache(maxsize=None)
def _perms_cached(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def _perm_blocks(n: int):
    """Yield (m, n) arrays of permutations, jointly exhaustive, lex order."""
    if n <= _CACHE_MAX_N:
        yield _perms_cached(n)
        return
    it = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(it, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _as_matrix(rows) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    assert m.ndim == 2 and m.shape[0] == m.shape[1]
    return m


def find_matching_permutation(a, b) -> tuple[int, ...] | None:
    """First permutation p (lex order) with a[i][j] == b[p[i]][p[j]], or None.

    Runs the full enumeration; there is no pruning beyond the natural
    short-circuit of returning the first hit.
    """
    A, B = _as_matrix(a), _as_matrix(b)
    n = A.shape[0]
    if B.shape[0] != n:
        return None
    if n == 1:
        return (0,) if A[0, 0] == B[0, 0] else None
    for P in _perm_blocks(n):
        pats = B[P[:, :, None], P[:, None, :]]
        ok = (pats == A[None]).reshape(len(P), -1).all(axis=1)
        hit = int(np.argmax(ok))
        if ok[hit]:
            return tuple(int(v) for v in P[hit])
    return None


def canonical_pattern(a) -> bytes:
    """Lexicographically least flattened relabelling of ``a`` over all n! maps.

    ``canonical_pattern(A) == canonical_pattern(B)`` iff some permutation
    matches A to B, provided both use the same entry encoding.
    """
    A = _as_matrix(a)
    n = A.shape[0]
    if n == 1:
        return A.reshape(1).tobytes()
    best = None
    for P in _perm_blocks(n):
        pats = A[P[:, :, None], P[:, None, :]].reshape(len(P), n * n)
        cand = pats
        for col in range(n * n):
            colv = cand[:, col]
            m = colv.min()
            mask = colv == m
            if not mask.all():
                cand = cand[mask]
            if cand.shape[0] == 1:
                break
        block_best = cand[0].tobytes()
        if best is None or block_best < best:
            best = block_best
    return best


def canonical_witness(a) -> tuple[bytes, tuple[int, ...]]:
    """Canonical pattern together with a permutation achieving it.

    The witness q satisfies vec(a[q][:, q]) == canonical pattern; composing
    witnesses of two matrices with equal canonical forms yields a matching
    permutation between them.
    """
    A = _as_matrix(a)
    n = A.shape[0]
    if n == 1:
        return A.reshape(1).tobytes(), (0,)
    best = None
    best_perm = None
    for P in _perm_blocks(n):
        pats = A[P[:, :, None], P[:, None, :]].reshape(len(P), n * n)
        cand = np.arange(len(P))
        for col in range(n * n):
            colv = pats[cand, col]
            m = colv.min()
            mask = colv == m
            if not mask.all():
                cand = cand[mask]
            if cand.shape[0] == 1:
                break
        idx = int(cand[0])
        block_best = pats[idx].tobytes()
        if best is None or block_best < best:
            best = block_best
            best_perm = tuple(int(v) for v in P[idx])
    return best, best_perm


def encode_values(matrix_rows, value_order) -> list[list[int]]:
    """Replace matrix entries by their index in ``value_order`` (a sorted list).

    Shared encodings make patterns of different matrices comparable: use
    the sorted union of both value sets when matching a pair, or each
    matrix's own sorted values when canonicalising (then compare the
    value lists alongside the patterns).
    """
    pos = {v: i for i, v in enumerate(value_order)}
    return [[pos[v] for v in row] for row in matrix_rows]
