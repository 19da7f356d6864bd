"""Vectors and matrices over GF(2^m) and the rank metric.

Vectors are lists of field integers and matrices are lists of rows, always
interpreted in an explicit :class:`~rankcrypt.galois.GF2m`.  Binary matrices
use the packed-row convention of :mod:`rankcrypt.gf2`.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from . import gf2
from .galois import GF2m, CoordinateMap

Vector = list[int]
Matrix = list[list[int]]


class NoSolutionError(ArithmeticError):
    """The linear system is inconsistent."""


class RankError(ValueError):
    """A matrix does not have the rank an operation requires."""


class InstanceTooLargeError(ValueError):
    """Brute-force enumeration would exceed the size guard."""


BRUTE_FORCE_LIMIT = 1 << 24


# ---------------------------------------------------------------------------
# rank metric


def coordinate_matrix(fld: GF2m, v: Sequence[int], basis: Sequence[int] | None = None) -> list[int]:
    """``m x n`` binary matrix whose column ``j`` holds the coordinates of ``v[j]``.

    With no basis the polynomial basis is used and the matrix is a plain
    transposition of the element bits.
    """
    if basis is None:
        cols = list(v)
    else:
        cmap = CoordinateMap(fld, basis)
        cols = [cmap.coords_packed(x) for x in v]
    return gf2.transpose(cols, fld.m)


def rank_weight(v: Sequence[int]) -> int:
    """Dimension of the GF(2)-span of the entries."""
    return gf2.rank(v)


def matrix_rank_weight(mat: Sequence[Sequence[int]]) -> int:
    return gf2.rank(x for row in mat for x in row)


def support_basis(v: Sequence[int]) -> list[int]:
    """Reduced echelon basis of the support, ordered by increasing leading bit."""
    return gf2.echelon_basis(v)


# ---------------------------------------------------------------------------
# vectors and matrices over GF(2^m)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vector:
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return [a ^ b for a, b in zip(u, v)]


def scalar_vec(fld: GF2m, c: int, v: Sequence[int]) -> Vector:
    mul = fld.mul
    return [mul(c, x) for x in v]


def vec_bin(v: Sequence[int], p_cols: Sequence[int]) -> Vector:
    """``v @ P`` for a binary matrix given by its packed columns."""
    out = []
    for col in p_cols:
        acc = 0
        j = 0
        while col:
            if col & 1:
                acc ^= v[j]
            col >>= 1
            j += 1
        out.append(acc)
    return out


def mat_add(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if len(a) != len(b):
        raise ValueError("shape mismatch")
    return [vec_add(r, s) for r, s in zip(a, b)]


def vec_mat(fld: GF2m, v: Sequence[int], mat: Sequence[Sequence[int]]) -> Vector:
    if len(v) != len(mat):
        raise ValueError("shape mismatch")
    ncols = len(mat[0]) if mat else 0
    out = [0] * ncols
    mul = fld.mul
    for c, row in zip(v, mat):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] ^= mul(c, x)
    return out


def mat_mul(fld: GF2m, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    return [vec_mat(fld, row, b) for row in a]


def transpose(mat: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*mat)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def kronecker(fld: GF2m, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    """Block matrix ``[a_ij * B]``."""
    mul = fld.mul
    out: Matrix = []
    for arow in a:
        for brow in b:
            out.append([mul(x, y) for x in arow for y in brow])
    return out


def moore_matrix(fld: GF2m, g: Sequence[int], k: int) -> Matrix:
    """``k x n`` matrix whose row ``i`` is ``g`` with every entry raised to ``2^i``."""
    if not 1 <= k <= fld.m:
        raise ValueError("need 1 <= k <= m")
    rows = [list(g)]
    sqr = fld.sqr
    for _ in range(k - 1):
        rows.append([sqr(x) for x in rows[-1]])
    return rows


def solve_linear(fld: GF2m, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    """A solution ``X`` of ``A X = B`` over GF(2^m); free variables are zero.

    The pivot in each column is the first row (in order) with a nonzero entry.
    Raises :class:`NoSolutionError` for inconsistent systems.
    """
    nrows = len(a)
    if nrows != len(b):
        raise ValueError("row count mismatch")
    if nrows == 0:
        return []
    ncols = len(a[0])
    nrhs = len(b[0]) if b else 0
    work = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    mul, inv = fld.mul, fld.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        s = inv(work[r][c])
        work[r] = [mul(s, x) for x in work[r]]
        prow = work[r]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x ^ mul(f, y) if y else x for x, y in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if any(work[i][ncols:]):
            raise NoSolutionError("inconsistent linear system")
    x = [[0] * nrhs for _ in range(ncols)]
    for i, c in enumerate(pivots):
        x[c] = work[i][ncols:]
    return x


def mat_inverse(fld: GF2m, a: Sequence[Sequence[int]]) -> Matrix:
    n = len(a)
    if matrix_rank(fld, a) != n:
        raise RankError("matrix is singular")
    return solve_linear(fld, a, identity(n))


def matrix_rank(fld: GF2m, a: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2^m)."""
    work = [list(r) for r in a]
    if not work:
        return 0
    mul, inv = fld.mul, fld.inv
    rank = 0
    ncols = len(work[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        s = inv(work[rank][c])
        prow = [mul(s, x) for x in work[rank]]
        for i in range(rank + 1, len(work)):
            if work[i][c]:
                f = work[i][c]
                work[i] = [x ^ mul(f, y) for x, y in zip(work[i], prow)]
        rank += 1
    return rank


def information_set(fld: GF2m, g1: Sequence[Sequence[int]]) -> list[int]:
    """First columns (scanning left to right) that form an invertible submatrix."""
    k = len(g1)
    chosen: list[int] = []
    reduced: list[list[int]] = []  # reduced column vectors with pivot rows
    pivot_rows: list[int] = []
    mul, inv = fld.mul, fld.inv
    for j in range(len(g1[0]) if k else 0):
        col = [g1[i][j] for i in range(k)]
        for vec, pr in zip(reduced, pivot_rows):
            f = col[pr]
            if f:
                col = [x ^ mul(f, y) for x, y in zip(col, vec)]
        pr = next((i for i in range(k) if col[i]), None)
        if pr is None:
            continue
        s = inv(col[pr])
        col = [mul(s, x) for x in col]
        reduced.append(col)
        pivot_rows.append(pr)
        chosen.append(j)
        if len(chosen) == k:
            return chosen
    raise RankError("generator matrix does not have full row rank")


# ---------------------------------------------------------------------------
# brute-force minimum distance


def min_rank_distance_bruteforce(fld: GF2m, g: Sequence[Sequence[int]]) -> int:
    """Minimum rank weight over all nonzero codewords ``u G``.

    Scalar multiples share their rank weight, so only messages whose first
    nonzero coordinate is 1 are enumerated.  Guarded by ``q^(mk) <= 2^24``.
    """
    k = len(g)
    if k == 0:
        raise ValueError("empty generator matrix")
    if fld.order**k > BRUTE_FORCE_LIMIT:
        raise InstanceTooLargeError("q^(m k) exceeds the brute-force limit")
    n = len(g[0])
    # table[i][c] = c * row_i packed as one integer of n m-bit fields
    m = fld.m
    tables = []
    for row in g:
        t = []
        for c in range(fld.order):
            packed = 0
            for j, x in enumerate(row):
                packed |= fld.mul(c, x) << (j * m)
            t.append(packed)
        tables.append(t)
    mask = fld.mask
    shifts = [j * m for j in range(n)]
    best = n + 1
    elems = range(fld.order)
    for lead in range(k):
        tail_tables = tables[lead + 1 :]
        base = tables[lead][1]
        for tail in itertools.product(elems, repeat=k - lead - 1):
            word = base
            for t, c in zip(tail_tables, tail):
                word ^= t[c]
            w = gf2.rank((word >> s) & mask for s in shifts)
            if w < best:
                best = w
                if best <= 1:
                    return best
    return best
