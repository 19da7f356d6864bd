"""Extended Gabidulin codes, their Kronecker products and decoders.

An extended Gabidulin (EG) code of dimension ``k`` is the evaluation code
``{(f(g_1), ..., f(g_n)) : deg_q f < k}`` for a generator ``g`` of rank weight
``t``.  The Kronecker product of two such codes (EGK) has generator matrix
``G1 (x) G2``.

Decoding an EG code with ``t = m`` works in the transform domain: column
operations bring the generator to a basis followed by zeros, a change of basis
maps that basis onto the conjugates of the normal element, and the received
word then becomes a polynomial whose key equation is solved by the early-stop
Euclidean algorithm.  EGK words are decoded block by block on an information
set of the first component.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import gf2
from . import qpoly
from .galois import GF2m, NormalBasis, find_normal_basis
from .rank_linalg import (
    RankError,
    information_set,
    kronecker,
    moore_matrix,
    rank_weight,
    solve_linear,
    vec_bin,
)

REMAINDER_NONZERO = "remainder-nonzero"
RADIUS_EXCEEDED = "radius-exceeded"
RANK_ERROR = "rank-error"


class DecodingFailure(Exception):
    """Raised by callers that turn a failed :class:`DecodeOutcome` into an error."""


class RegimeError(ValueError):
    """The EGK parameters fall outside the regimes with a known radius."""


@dataclass(frozen=True)
class DecodeOutcome:
    message: list[int] | None
    reason: str | None = None
    block: int | None = None

    @property
    def ok(self) -> bool:
        return self.message is not None

    @classmethod
    def failure(cls, reason: str, block: int | None = None) -> "DecodeOutcome":
        return cls(None, reason, block)


def canonicalize_generator(g: Sequence[int], t: int | None = None) -> tuple[list[int], list[int]]:
    """Invertible binary ``P`` with ``g P = (g'_1..g'_t, 0, ..., 0)``.

    Entries that are independent of the earlier ones are kept (in order) and
    moved to the front; every other entry is cancelled by a column operation
    against the kept ones.  ``P`` is returned by packed columns, column ``j``
    selecting which entries of ``g`` sum to ``g'_j``.
    """
    basis: list[int] = []  # echelon rows, reduced by leading bit
    combo: list[int] = []  # which original positions make up each basis row
    kept: list[int] = []
    cancel: list[tuple[int, int]] = []
    for j, x in enumerate(g):
        v, c = x, 0
        for b, cb in zip(basis, combo):
            if (v >> (b.bit_length() - 1)) & 1:
                v ^= b
                c ^= cb
        if v:
            basis.append(v)
            combo.append(c | (1 << j))
            # keep basis sorted by decreasing leading bit for the reduction loop
            order = sorted(range(len(basis)), key=lambda i: -basis[i].bit_length())
            basis = [basis[i] for i in order]
            combo = [combo[i] for i in order]
            kept.append(j)
        else:
            cancel.append((j, c | (1 << j)))
    if t is not None and len(kept) != t:
        raise RankError(f"generator has rank weight {len(kept)}, expected {t}")
    cols = [1 << j for j in kept] + [c for _, c in cancel]
    g_prime = vec_bin(g, cols)
    return g_prime, cols


@dataclass(frozen=True)
class EGCode:
    """Extended Gabidulin code ``EG_k(g)`` over ``field``."""

    field: GF2m
    g: tuple[int, ...]
    k: int
    t: int

    def __post_init__(self):
        n = len(self.g)
        if not 1 <= self.k <= self.t <= min(n, self.field.m):
            raise ValueError("need 1 <= k <= t <= min(n, m)")
        if rank_weight(self.g) != self.t:
            raise RankError("generator rank weight differs from t")

    @classmethod
    def from_generator(cls, fld: GF2m, g: Sequence[int], k: int) -> "EGCode":
        return cls(fld, tuple(g), k, rank_weight(g))

    @property
    def n(self) -> int:
        return len(self.g)

    @cached_property
    def canonical(self) -> tuple[list[int], list[int]]:
        return canonicalize_generator(self.g, self.t)

    @cached_property
    def generator_matrix(self) -> list[list[int]]:
        return moore_matrix(self.field, self.g, self.k)

    def encode(self, msg: Sequence[int]) -> list[int]:
        """``(f(g_1), ..., f(g_n))`` with ``f`` the polynomial of coefficients ``msg``."""
        if len(msg) != self.k:
            raise ValueError(f"message must have length {self.k}")
        mul = self.field.mul
        out = [0] * self.n
        for c, row in zip(msg, self.generator_matrix):
            if c:
                for j, x in enumerate(row):
                    out[j] ^= mul(c, x)
        return out

    @property
    def radius(self) -> int:
        """Guaranteed radius of the transform decoder."""
        return (self.t - self.k) // 2

    @property
    def radius_bound(self) -> int:
        """The looser bound ``min(t - k, floor((n - k) / 2))`` (informational)."""
        return min(self.t - self.k, (self.n - self.k) // 2)

    # -- decoder -------------------------------------------------------------
    @cached_property
    def _decoder(self) -> "_TransformDecoder":
        if self.t != self.field.m:
            raise ValueError("the transform decoder requires t = m")
        return _TransformDecoder(self)

    def decode(self, y: Sequence[int]) -> DecodeOutcome:
        if len(y) != self.n:
            raise ValueError(f"received word must have length {self.n}")
        return self._decoder.decode(list(y))


class _TransformDecoder:
    def __init__(self, code: EGCode):
        fld = code.field
        m = fld.m
        self.code = code
        self.field = fld
        self.nb: NormalBasis = find_normal_basis(fld)
        g_prime, p_cols = code.canonical
        # A: column j = normal-basis coordinates of g'_j, so g' = conj * A
        a_cols = [self.nb.coords_packed(x) for x in g_prime[:m]]
        a_rows = gf2.transpose(a_cols, m)
        a_inv_rows = gf2.inverse(a_rows)
        a_inv_cols = gf2.transpose(a_inv_rows, m)
        # combined binary map Q = P[:, :m] A^-1 as packed columns over positions
        self.q_cols = [gf2.vec_mat(c, p_cols[:m]) for c in a_inv_cols]
        self.d_stop = (code.t + code.k) // 2
        self.modulus = [1] + [0] * (m - 1) + [1]

    def decode(self, y: list[int]) -> DecodeOutcome:
        code, fld = self.code, self.field
        z = vec_bin(y, self.q_cols)
        big_y = qpoly._trim(qpoly._cyclic_correlate(fld, z, self.nb.dual))
        if len(big_y) - 1 < self.d_stop:
            f = big_y
        else:
            r, u = qpoly._leea_fast(fld, self.modulus, big_y, self.d_stop)
            if not u:
                return DecodeOutcome.failure(REMAINDER_NONZERO)
            f, rem = qpoly._ldiv(fld, r, u)
            if rem:
                return DecodeOutcome.failure(REMAINDER_NONZERO)
        if len(f) > code.k:
            return DecodeOutcome.failure(RADIUS_EXCEEDED)
        msg = list(f) + [0] * (code.k - len(f))
        err = [a ^ b for a, b in zip(y, code.encode(msg))]
        if rank_weight(err) > code.radius:
            return DecodeOutcome.failure(RADIUS_EXCEEDED)
        return DecodeOutcome(msg)


def eg_generator_matrix(code: EGCode) -> list[list[int]]:
    return code.generator_matrix


def eg_encode(code: EGCode, msg: Sequence[int]) -> list[int]:
    return code.encode(msg)


def eg_decode(code: EGCode, y: Sequence[int]) -> DecodeOutcome:
    return code.decode(y)


def eg_decoding_radius(code: EGCode) -> int:
    return code.radius


# ---------------------------------------------------------------------------
# Kronecker products

CASE_1 = "case-1"
CASE_2 = "case-2"


@dataclass(frozen=True)
class EGKCode:
    """Kronecker product ``C1 (x) C2`` of two EG codes over the same field."""

    c1: EGCode
    c2: EGCode

    def __post_init__(self):
        if self.c1.field != self.c2.field:
            raise ValueError("component codes over different fields")

    @property
    def field(self) -> GF2m:
        return self.c1.field

    @property
    def n(self) -> int:
        return self.c1.n * self.c2.n

    @property
    def k(self) -> int:
        return self.c1.k * self.c2.k

    @property
    def regime(self) -> str | None:
        c1, c2, m = self.c1, self.c2, self.field.m
        if c1.k == c1.t and c2.t == m < c1.t * c2.t:
            return CASE_1
        if c1.t * c2.t <= m:
            return CASE_2
        return None

    @property
    def radius(self) -> int:
        c1, c2 = self.c1, self.c2
        regime = self.regime
        if regime == CASE_1:
            return (c2.t - c2.k) // 2
        if regime == CASE_2:
            return ((c1.t - c1.k + 1) * (c2.t - c2.k + 1) - 1) // 2
        raise RegimeError("parameters outside both known regimes")

    @cached_property
    def generator_matrix(self) -> list[list[int]]:
        return kronecker(self.field, self.c1.generator_matrix, self.c2.generator_matrix)

    @cached_property
    def _info(self) -> tuple[list[int], list[list[int]]]:
        fld = self.field
        g1 = self.c1.generator_matrix
        cols = information_set(fld, g1)
        sub = [[g1[i][j] for i in range(self.c1.k)] for j in cols]
        return cols, sub

    def encode(self, msg: Sequence[int]) -> list[int]:
        """``msg (G1 (x) G2)`` computed block by block."""
        k1, k2 = self.c1.k, self.c2.k
        if len(msg) != k1 * k2:
            raise ValueError(f"message must have length {k1 * k2}")
        fld = self.field
        mul = fld.mul
        g1 = self.c1.generator_matrix
        blocks = [msg[i * k2 : (i + 1) * k2] for i in range(k1)]
        out: list[int] = []
        for j in range(self.c1.n):
            s = [0] * k2
            for i in range(k1):
                c = g1[i][j]
                if c:
                    for l, x in enumerate(blocks[i]):
                        if x:
                            s[l] ^= mul(c, x)
            out.extend(self.c2.encode(s))
        return out

    def blocks(self, y: Sequence[int]) -> list[list[int]]:
        n2 = self.c2.n
        return [list(y[j * n2 : (j + 1) * n2]) for j in range(self.c1.n)]

    def decode(self, y: Sequence[int]) -> DecodeOutcome:
        """Decode each information-set block with ``C2`` and solve for the message."""
        if len(y) != self.n:
            raise ValueError(f"received word must have length {self.n}")
        cols, sub = self._info
        n2 = self.c2.n
        rhs = []
        for j in cols:
            out = self.c2.decode(y[j * n2 : (j + 1) * n2])
            if not out.ok:
                return DecodeOutcome.failure(out.reason or REMAINDER_NONZERO, block=j)
            rhs.append(out.message)
        try:
            x = solve_linear(self.field, sub, rhs)
        except ArithmeticError:
            return DecodeOutcome.failure(RANK_ERROR)
        return DecodeOutcome([v for row in x for v in row])


def egk_generator_matrix(code: EGKCode) -> list[list[int]]:
    return code.generator_matrix


def egk_decode(code: EGKCode, y: Sequence[int]) -> DecodeOutcome:
    return code.decode(y)


def egk_decoding_radius(code: EGKCode) -> int:
    return code.radius
