"""The ring GF(2^m)[X] / N(X) with N a binary irreducible polynomial.

Ring elements are coefficient lists of length ``n`` over GF(2^m).  Products
use Kronecker substitution in both variables: the unreduced bit array of the
product (one row per power of ``X``, ``2m - 1`` columns per coefficient) is
folded modulo ``N`` along the rows and modulo the field polynomial along the
columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .galois import GF2m, find_irreducible, fold_axis, is_irreducible, poly_str
from .rank_linalg import Matrix, Vector


class RingMismatchError(ValueError):
    """Operands or shapes do not match the ring."""


@dataclass(frozen=True)
class RingParams:
    """Degree ``n``, binary modulus ``N`` (an integer bit mask) and the field."""

    field: GF2m
    n: int
    modulus: int = 0
    _shifts: tuple[int, ...] = dc_field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ring degree must be positive")
        modulus = self.modulus or find_irreducible(self.n)
        if modulus.bit_length() - 1 != self.n:
            raise ValueError("modulus degree differs from n")
        if not is_irreducible(modulus):
            raise ValueError("ring modulus must be irreducible over GF(2)")
        shifts = tuple(i for i in range(self.n) if (modulus >> i) & 1)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_shifts", shifts)

    def __str__(self) -> str:
        return poly_str(self.modulus, "X")

    def check(self, u: Sequence[int]) -> None:
        if len(u) != self.n:
            raise RingMismatchError(f"ring element must have length {self.n}")

    def one(self) -> Vector:
        return [1] + [0] * (self.n - 1)

    def zero(self) -> Vector:
        return [0] * self.n


def ring_mul(ring: RingParams, u: Sequence[int], v: Sequence[int]) -> Vector:
    """``u(X) v(X) mod N(X)``."""
    ring.check(u)
    ring.check(v)
    fld = ring.field
    if not any(u) or not any(v):
        return ring.zero()
    bits = fld.poly_mul_bits(u, v)
    bits = fold_axis(bits, ring.n, ring._shifts, axis=0)
    return fld.from_bits(fld.reduce_bits(bits))


def ring_mul_x(ring: RingParams, v: Sequence[int]) -> Vector:
    """``X v(X) mod N(X)``."""
    top = v[-1]
    out = [0] + list(v[:-1])
    if top:
        for s in ring._shifts:
            out[s] ^= top
    return out


def ideal_matrix(ring: RingParams, v: Sequence[int]) -> Matrix:
    """``n x n`` matrix whose row ``i`` is ``X^i v(X) mod N(X)``."""
    ring.check(v)
    rows = [list(v)]
    for _ in range(ring.n - 1):
        rows.append(ring_mul_x(ring, rows[-1]))
    return rows


def vec_ring_mat_mul(ring: RingParams, z: Sequence[int], mat: Sequence[Sequence[int]]) -> Matrix:
    """Matrix whose column ``j`` is ``z`` times column ``j`` of ``mat`` in the ring."""
    if len(mat) != ring.n:
        raise RingMismatchError(f"matrix must have {ring.n} rows")
    cols = [list(c) for c in zip(*mat)]
    prods = [ring_mul(ring, z, c) for c in cols]
    return [list(r) for r in zip(*prods)]


def fold(v: Sequence[int], a: int) -> Matrix:
    """``a x (len(v) / a)`` matrix whose column ``j`` is the ``j``-th chunk of ``v``."""
    if a < 1 or len(v) % a:
        raise ValueError("vector length must be a multiple of the row count")
    b = len(v) // a
    return [[v[j * a + i] for j in range(b)] for i in range(a)]


def unfold(mat: Sequence[Sequence[int]]) -> Vector:
    """Inverse of :func:`fold`: columns concatenated in order."""
    if not mat:
        return []
    return [x for col in zip(*mat) for x in col]
