"""Deterministic seed expansion and rank-constrained samplers.

Every random object is a pure function of a 40-byte seed, a one-byte domain
tag and the order of the draws.  The stream is SHAKE-256 over ``seed || tag``.
Objects of exact rank weight ``w`` are built as ``basis * C`` where ``basis``
holds ``w`` independent field elements and ``C`` is a full-rank ``w x n`` bit
matrix, both drawn by rejection.
"""

from __future__ import annotations

import hashlib
from typing import Sequence

from . import gf2
from .galois import GF2m
from .rank_linalg import Matrix, Vector

SEED_BYTES = 40
MAX_RETRIES = 256

DOMAIN_KEYGEN_SECRET = 0x01
DOMAIN_KEYGEN_PUBLIC = 0x02
DOMAIN_ENCRYPT = 0x03
DOMAIN_KEM = 0x04


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its retry budget."""


class Expander:
    """Byte stream of SHAKE-256(seed || domain), consumed front to back."""

    def __init__(self, seed: bytes, domain: int):
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes")
        if not 0 <= domain <= 255:
            raise ValueError("domain tag must fit in one byte")
        self.seed = bytes(seed)
        self.domain = domain
        self._xof = hashlib.shake_256(self.seed + bytes([domain]))
        self._buf = b""
        self._pos = 0

    def clone(self) -> "Expander":
        other = Expander(self.seed, self.domain)
        other._buf, other._pos = self._buf, self._pos
        return other

    def expand(self, nbytes: int) -> bytes:
        if nbytes < 0:
            raise ValueError("byte count must be non-negative")
        end = self._pos + nbytes
        if end > len(self._buf):
            # shake digests are prefixes of one another, so regrow the buffer
            self._buf = self._xof.digest(max(end, 2 * len(self._buf), 256))
        out = self._buf[self._pos : end]
        self._pos = end
        return out

    def bits(self, nbits: int) -> int:
        """Integer holding the next ``nbits`` stream bits (little-endian)."""
        raw = self.expand((nbits + 7) // 8)
        return int.from_bytes(raw, "little") & ((1 << nbits) - 1)


def expand(e: Expander, nbytes: int) -> bytes:
    return e.expand(nbytes)


def _check_weight(fld: GF2m, n: int, w: int) -> None:
    if w < 0 or w > min(n, fld.m):
        raise ValueError(f"weight {w} infeasible for length {n} over GF(2^{fld.m})")


def sample_element(e: Expander, fld: GF2m) -> int:
    return e.bits(fld.m)


def sample_uniform(e: Expander, fld: GF2m, n: int) -> Vector:
    return [e.bits(fld.m) for _ in range(n)]


def sample_independent(e: Expander, fld: GF2m, w: int) -> list[int]:
    """``w`` GF(2)-independent field elements."""
    for _ in range(MAX_RETRIES):
        basis = [e.bits(fld.m) for _ in range(w)]
        if gf2.rank(basis) == w:
            return basis
    raise SamplingError("could not draw an independent family")


def sample_full_rank(e: Expander, rows: int, cols: int) -> list[int]:
    """``rows x cols`` bit matrix of rank ``rows`` (packed rows)."""
    for _ in range(MAX_RETRIES):
        mat = [e.bits(cols) for _ in range(rows)]
        if gf2.rank(mat) == rows:
            return mat
    raise SamplingError("could not draw a full-rank bit matrix")


def combine(basis: Sequence[int], coef: Sequence[int], n: int) -> Vector:
    """``basis * coef``: entry ``j`` is the XOR of ``basis[i]`` over rows with bit ``j`` set."""
    out = [0] * n
    for b, row in zip(basis, coef):
        while row:
            low = row & -row
            out[low.bit_length() - 1] ^= b
            row ^= low
    return out


def sample_weight_vector(e: Expander, fld: GF2m, n: int, w: int) -> Vector:
    """Length-``n`` vector of rank weight exactly ``w``."""
    _check_weight(fld, n, w)
    if w == 0:
        return [0] * n
    basis = sample_independent(e, fld, w)
    coef = sample_full_rank(e, w, n)
    return combine(basis, coef, n)


def sample_generator(e: Expander, fld: GF2m, n: int, t: int) -> Vector:
    return sample_weight_vector(e, fld, n, t)


def sample_blockwise(
    e: Expander,
    fld: GF2m,
    lengths: Sequence[int],
    weights: Sequence[int],
    disjoint: bool = True,
) -> list[Vector]:
    """Blocks of exact weights with pairwise trivially-intersecting supports.

    One support of dimension ``sum(weights)`` is drawn and split into
    consecutive sub-bases, one per block.  With ``disjoint=False`` every block
    is drawn independently instead.
    """
    if len(lengths) != len(weights):
        raise ValueError("one weight per block")
    for n, w in zip(lengths, weights):
        _check_weight(fld, n, w)
    if not disjoint:
        return [sample_weight_vector(e, fld, n, w) for n, w in zip(lengths, weights)]
    total = sum(weights)
    if total > fld.m:
        raise ValueError("total weight exceeds the extension degree")
    basis = sample_independent(e, fld, total)
    out = []
    pos = 0
    for n, w in zip(lengths, weights):
        sub = basis[pos : pos + w]
        pos += w
        coef = sample_full_rank(e, w, n) if w else []
        out.append(combine(sub, coef, n))
    return out


def to_matrix(v: Sequence[int], rows: int, cols: int) -> Matrix:
    """Row-major reshape."""
    if len(v) != rows * cols:
        raise ValueError("shape mismatch")
    return [list(v[i * cols : (i + 1) * cols]) for i in range(rows)]


def sample_nh(
    e: Expander,
    fld: GF2m,
    a: int,
    widths: tuple[int, int, int],
    w1: int,
    w2: int,
) -> tuple[Matrix, Matrix, Matrix]:
    """Matrices ``M1 (a x b)``, ``M2 (a x c)``, ``M3 (a x d)`` with nested supports.

    ``(M1, M3)`` jointly have rank weight ``w1``, ``M2`` has rank weight
    ``w2`` and the support of ``(M1, M3)`` lies inside that of ``M2``.
    """
    b, c, d = widths
    if not 0 <= w1 <= w2 <= fld.m:
        raise ValueError("need 0 <= w1 <= w2 <= m")
    if w1 > a * (b + d) or w2 > a * c:
        raise ValueError("weights exceed the number of entries")
    v2 = sample_independent(e, fld, w2)
    t = sample_full_rank(e, w1, w2) if w1 else []
    v1 = [gf2_combine_row(v2, row) for row in t]
    outer = combine(v1, sample_full_rank(e, w1, a * (b + d)), a * (b + d)) if w1 else [0] * (a * (b + d))
    mid = combine(v2, sample_full_rank(e, w2, a * c), a * c) if w2 else [0] * (a * c)
    m1 = to_matrix(outer[: a * b], a, b)
    m3 = to_matrix(outer[a * b :], a, d)
    return m1, to_matrix(mid, a, c), m3


def gf2_combine_row(basis: Sequence[int], row: int) -> int:
    """XOR of the basis elements selected by the bits of ``row``."""
    acc = 0
    for i, x in enumerate(basis):
        if (row >> i) & 1:
            acc ^= x
    return acc
