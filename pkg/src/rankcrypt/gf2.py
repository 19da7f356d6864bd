"""Dense linear algebra over GF(2) with rows packed into Python integers.

A matrix with ``r`` rows and ``c`` columns is a list of ``r`` integers, bit
``j`` of row ``i`` holding entry ``(i, j)``.  The same packing doubles as the
coordinate representation of GF(2^m) elements, so ranks of element lists are
ranks of their coordinate matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class SingularMatrixError(ArithmeticError):
    """Raised when a GF(2) matrix that must be invertible is not."""


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of the packed rows."""
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    return len(pivots)


def echelon_basis(rows: Iterable[int]) -> list[int]:
    """Reduced echelon basis of the row span, sorted by increasing leading bit.

    Every basis vector has a distinct leading bit and no other basis vector
    has that bit set, so the result is unique for a given span.
    """
    pivots: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                break
            v ^= p
    lead = sorted(pivots)
    basis = [pivots[b] for b in lead]
    # back-substitute so pivot columns are clean
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if (basis[j] >> lead[i]) & 1:
                basis[j] ^= basis[i]
    return basis


def reduce_against(v: int, basis: Sequence[int]) -> int:
    """Residue of ``v`` modulo an echelon basis from :func:`echelon_basis`."""
    for b in reversed(basis):
        top = b.bit_length() - 1
        if (v >> top) & 1:
            v ^= b
    return v


def in_span(v: int, basis: Sequence[int]) -> bool:
    return reduce_against(v, basis) == 0


def echelon_coordinates(v: int, basis: Sequence[int]) -> int:
    """Bit mask ``c`` with ``v = XOR(basis[i] for bits i of c)``.

    ``basis`` must come from :func:`echelon_basis`; raises ``ValueError``
    when ``v`` is outside the span.
    """
    c = 0
    for i in range(len(basis) - 1, -1, -1):
        b = basis[i]
        if (v >> (b.bit_length() - 1)) & 1:
            v ^= b
            c |= 1 << i
    if v:
        raise ValueError("vector outside span")
    return c


def identity(n: int) -> list[int]:
    return [1 << i for i in range(n)]


def transpose(rows: Sequence[int], ncols: int) -> list[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        bit = 1 << i
        while r:
            low = r & -r
            out[low.bit_length() - 1] |= bit
            r ^= low
    return out


def mat_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product ``a @ b``; row ``i`` is the XOR of the rows of ``b`` selected by ``a[i]``."""
    out = []
    for r in a:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= b[j]
            r >>= 1
            j += 1
        out.append(acc)
    return out


def vec_mat(v: int, b: Sequence[int]) -> int:
    """Row vector times matrix."""
    acc = 0
    j = 0
    while v:
        if v & 1:
            acc ^= b[j]
        v >>= 1
        j += 1
    return acc


def inverse(rows: Sequence[int]) -> list[int]:
    """Inverse of a square matrix; raises :class:`SingularMatrixError`."""
    n = len(rows)
    work = list(rows)
    inv = identity(n)
    for col in range(n):
        bit = 1 << col
        piv = next((r for r in range(col, n) if work[r] & bit), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular over GF(2)")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            inv[col], inv[piv] = inv[piv], inv[col]
        pr, pi = work[col], inv[col]
        for r in range(n):
            if r != col and work[r] & bit:
                work[r] ^= pr
                inv[r] ^= pi
    return inv


def solve(rows: Sequence[int], ncols: int, rhs: Sequence[int]) -> int | None:
    """One solution ``x`` (packed) of ``A x = rhs`` over GF(2), or ``None``.

    ``rows`` are the equations with ``ncols`` unknowns, ``rhs`` the bits of the
    right-hand side.  Free variables are set to zero.
    """
    flag = 1 << ncols
    unk = flag - 1
    pivots: dict[int, int] = {}  # lowest unknown bit -> reduced row
    pmask = 0
    for r, b in zip(rows, rhs):
        r = (r & unk) | (flag if b & 1 else 0)
        hit = r & pmask
        while hit:
            r ^= pivots[(hit & -hit).bit_length() - 1]
            hit = r & pmask
        low = r & unk
        if not low:
            if r & flag:
                return None
            continue
        col = (low & -low).bit_length() - 1
        pivots[col] = r
        pmask |= 1 << col
    x = 0
    for col in sorted(pivots, reverse=True):
        r = pivots[col]
        bit = (r >> ncols) & 1
        bit ^= bin(r & unk & x).count("1") & 1
        if bit:
            x |= 1 << col
    return x
