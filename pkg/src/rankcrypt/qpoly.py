"""Linearized polynomials over GF(2^m).

A linearized polynomial ``f = sum f_i x^[i]`` with ``x^[i] = x^(2^i)`` is a
GF(2)-linear map of the field; composition (the symbolic product) makes them
a non-commutative ring.  Coefficient lists hold field integers with index
``i`` multiplying ``x^[i]``; trailing zeros are trimmed so the q-degree is
``len(coeffs) - 1`` and the zero polynomial has no coefficients.

Besides plain arithmetic this module provides right and left symbolic
division, the extended Euclidean algorithm with early stop used to solve key
equations, the q-transform pair over a normal basis, and transform-based
composition and multipoint evaluation.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gf2
from .galois import GF2m, NormalBasis

NEG_INF = -math.inf


def _trim(c: list[int]) -> list[int]:
    while c and not c[-1]:
        c.pop()
    return c


class LinearizedPoly:
    """Immutable linearized polynomial with coefficients in ``field``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: GF2m, coeffs: Sequence[int] = ()):
        self.field = fld
        self.coeffs = tuple(_trim(list(coeffs)))

    # constructors
    @classmethod
    def zero(cls, fld: GF2m) -> "LinearizedPoly":
        return cls(fld)

    @classmethod
    def monomial(cls, fld: GF2m, i: int, c: int = 1) -> "LinearizedPoly":
        return cls(fld, [0] * i + [c])

    @classmethod
    def frobenius_modulus(cls, fld: GF2m) -> "LinearizedPoly":
        """``x^[m] - x``, which acts as the zero map on the field."""
        return cls(fld, [1] + [0] * (fld.m - 1) + [1])

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other: "LinearizedPoly") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        self._same(other)
        return LinearizedPoly(self.field, _add(self.coeffs, other.coeffs))

    __sub__ = __add__

    def __matmul__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        return sym_mul(self, other)

    def __call__(self, a: int) -> int:
        return _eval(self.field, self.coeffs, a)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearizedPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c:#x}*x^[{i}]" for i, c in enumerate(self.coeffs) if c]
        return "LinearizedPoly(" + (" + ".join(terms) or "0") + ")"


# ---------------------------------------------------------------------------
# list-level kernels


def _add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] ^= x
    return _trim(out)


def _eval(fld: GF2m, coeffs: Sequence[int], a: int) -> int:
    acc = 0
    mul, sqr = fld.mul, fld.sqr
    p = a
    for i, c in enumerate(coeffs):
        if i:
            p = sqr(p)
        if c:
            acc ^= mul(c, p)
    return acc


# below this length element-wise loops beat the bulk numpy kernels
_BULK = 12


def _frob_all(fld: GF2m, coeffs: Sequence[int]) -> list[int]:
    if len(coeffs) >= _BULK:
        return fld.sqr_vec(coeffs)
    sqr = fld.sqr
    return [sqr(c) for c in coeffs]


def _axpy(fld: GF2m, out: list[int], off: int, c: int, v: Sequence[int]) -> None:
    """``out[off + j] ^= c * v[j]``."""
    if len(v) >= _BULK:
        for j, x in enumerate(fld.scale(c, v)):
            out[off + j] ^= x
        return
    mul = fld.mul
    for j, x in enumerate(v):
        if x:
            out[off + j] ^= mul(c, x)


def _sym_mul(fld: GF2m, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Exact composition ``f(g(x))``: ``c_k = sum f_i g_j^[i]``."""
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    gi = list(g)
    for i, fi in enumerate(f):
        if i:
            gi = _frob_all(fld, gi)
        if fi:
            _axpy(fld, out, i, fi, gi)
    return _trim(out)


def _reduce_frobenius(fld: GF2m, c: Sequence[int]) -> list[int]:
    m = fld.m
    if len(c) <= m:
        return list(c)
    out = [0] * m
    for i, x in enumerate(c):
        out[i % m] ^= x
    return _trim(out)


def _rdiv(fld: GF2m, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """``a = q (x) b + r`` with ``deg r < deg b`` by leading-term elimination."""
    if not b:
        raise ZeroDivisionError("symbolic division by the zero polynomial")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], _trim(r)
    q = [0] * (len(r) - db)
    mul, inv, sqr = fld.mul, fld.inv, fld.sqr
    b_frob = [list(b[:db])]  # b_frob[s] = low coefficients of b raised to 2^s
    lead_inv: list[int] = [inv(b[db])]
    while len(r) - 1 >= db:
        s = len(r) - 1 - db
        while len(b_frob) <= s:
            b_frob.append(_frob_all(fld, b_frob[-1]))
            lead_inv.append(sqr(lead_inv[-1]))
        coef = mul(r[-1], lead_inv[s])
        q[s] = coef
        _axpy(fld, r, s, coef, b_frob[s])
        r.pop()
        _trim(r)
    return _trim(q), r


def _ldiv(fld: GF2m, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """``a = b (x) q + r`` with ``deg r < deg b`` by coefficient recursion.

    The leading coefficient of ``b (x) c x^[s]`` is ``b_d c^[d]``, so each
    quotient coefficient needs a 2^d-th root, which in GF(2^m) is the
    Frobenius power ``m - d``.
    """
    if not b:
        raise ZeroDivisionError("symbolic division by the zero polynomial")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return [], _trim(r)
    m = fld.m
    q = [0] * (len(r) - db)
    mul, sqr = fld.mul, fld.sqr
    lead_inv = fld.inv(b[db])
    root = (m - db % m) % m
    while len(r) - 1 >= db:
        s = len(r) - 1 - db
        c = mul(r[-1], lead_inv)
        for _ in range(root):
            c = sqr(c)
        q[s] = c
        # subtract b (x) c x^[s] = sum_i b_i c^[i] x^[i+s]
        ci = c
        for i in range(db + 1):
            if i:
                ci = sqr(ci)
            if b[i]:
                r[i + s] ^= mul(b[i], ci)
        _trim(r)
    return _trim(q), r


def _ldiv_linear(fld: GF2m, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    """Left division by solving a GF(2) linear system for the quotient bits.

    The map ``q -> b (x) q`` is GF(2)-linear in the bits of the quotient
    coefficients; requiring the coefficients of ``a - b (x) q`` of degree at
    least ``deg b`` to vanish gives a square system.
    """
    if not b:
        raise ZeroDivisionError("symbolic division by the zero polynomial")
    db = len(b) - 1
    da = len(a) - 1
    if da < db:
        return [], list(a)
    m = fld.m
    nq = da - db + 1
    nunk = nq * m
    # images[u] = packed bits of coefficients db..da of b (x) (x^bit * x^[j])
    mul, sqr = fld.mul, fld.sqr
    cols: list[int] = []
    for j in range(nq):
        for bit in range(m):
            c = 1 << bit
            packed = 0
            ci = c
            for i in range(db + 1):
                if i:
                    ci = sqr(ci)
                deg = i + j
                if deg >= db and b[i]:
                    packed ^= mul(b[i], ci) << ((deg - db) * m)
            cols.append(packed)
    target = 0
    for deg in range(db, da + 1):
        target |= a[deg] << ((deg - db) * m)
    rows = gf2.transpose(cols, nunk)
    rhs = [(target >> e) & 1 for e in range(nunk)]
    sol = gf2.solve(rows, nunk, rhs)
    if sol is None:
        raise ArithmeticError("left division system is inconsistent")
    q = [(sol >> (j * m)) & fld.mask for j in range(nq)]
    q = _trim(q)
    r = _add(a, _sym_mul(fld, b, q))
    if len(r) - 1 >= db:
        raise ArithmeticError("left division left a high-degree remainder")
    return q, r


# ---------------------------------------------------------------------------
# public operations


def qp_eval(f: LinearizedPoly, a: int) -> int:
    """``sum f_i a^(2^i)``."""
    return _eval(f.field, f.coeffs, a)


def sym_mul(f: LinearizedPoly, g: LinearizedPoly, reduce: bool = False) -> LinearizedPoly:
    """Composition ``f(g(x))``; with ``reduce`` it is taken modulo ``x^[m] - x``."""
    f._same(g)
    c = _sym_mul(f.field, f.coeffs, g.coeffs)
    if reduce:
        c = _reduce_frobenius(f.field, c)
    return LinearizedPoly(f.field, c)


def reduce_frobenius(f: LinearizedPoly) -> LinearizedPoly:
    """Fold index ``i >= m`` onto ``i mod m`` (``x^[m] = x`` as maps)."""
    return LinearizedPoly(f.field, _reduce_frobenius(f.field, f.coeffs))


def rdiv(a: LinearizedPoly, b: LinearizedPoly) -> tuple[LinearizedPoly, LinearizedPoly]:
    a._same(b)
    q, r = _rdiv(a.field, a.coeffs, b.coeffs)
    return LinearizedPoly(a.field, q), LinearizedPoly(a.field, r)


def ldiv(a: LinearizedPoly, b: LinearizedPoly) -> tuple[LinearizedPoly, LinearizedPoly]:
    a._same(b)
    q, r = _ldiv(a.field, a.coeffs, b.coeffs)
    return LinearizedPoly(a.field, q), LinearizedPoly(a.field, r)


def ldiv_linear(a: LinearizedPoly, b: LinearizedPoly) -> tuple[LinearizedPoly, LinearizedPoly]:
    """Left division through the GF(2) quotient system (independent route)."""
    a._same(b)
    q, r = _ldiv_linear(a.field, a.coeffs, b.coeffs)
    return LinearizedPoly(a.field, q), LinearizedPoly(a.field, r)


def _leea(fld: GF2m, a: list[int], b: list[int], d_stop: int, track_v: bool, trace=None):
    if d_stop <= 0:
        raise ValueError("stopping degree must be positive")
    if len(a) < len(b) or not b:
        raise ValueError("need deg a >= deg b >= 0")
    # the sequence starts r_-1 = a, r_0 = b
    if len(a) - 1 < d_stop:
        return a, [], [1]
    r_prev, r_cur = a, b
    u_prev, u_cur = [], [1]
    v_prev, v_cur = [1], []
    if trace is not None:
        trace.append((r_cur, u_cur, v_cur))
    while len(r_cur) - 1 >= d_stop:
        q, r = _rdiv(fld, r_prev, r_cur)
        r_prev, r_cur = r_cur, r
        u_prev, u_cur = u_cur, _add(u_prev, _sym_mul(fld, q, u_cur))
        if track_v:
            v_prev, v_cur = v_cur, _add(v_prev, _sym_mul(fld, q, v_cur))
        if trace is not None:
            trace.append((r_cur, u_cur, v_cur))
    return r_cur, u_cur, v_cur if track_v else None


# ---------------------------------------------------------------------------
# LEEA on bit matrices
#
# A coefficient list of length L is held as an (L, m) float32 array of bits.
# Multiplying every coefficient by c, or squaring every coefficient, is a
# GF(2)-linear map on the rows, so both become one small BLAS product followed
# by reduction mod 2 (sums stay below 2^24, hence exact in float32).


class _BitKernels:
    def __init__(self, fld: GF2m):
        self.field = fld
        self.m = fld.m
        self.square = fld.to_bits([fld.sqr(1 << i) for i in range(fld.m)]).astype(np.float32)

    def times(self, c: int) -> np.ndarray:
        """Matrix of ``v -> c v``: row ``i`` holds the bits of ``c x^i``."""
        fld = self.field
        rows = []
        v = c
        for _ in range(self.m):
            rows.append(v)
            v <<= 1
            if v >> self.m:
                v ^= fld.modulus
        return fld.to_bits(rows).astype(np.float32)

    def to_array(self, coeffs: Sequence[int]) -> np.ndarray:
        if not coeffs:
            return np.zeros((0, self.m), dtype=np.float32)
        return self.field.to_bits(coeffs).astype(np.float32)

    def to_list(self, arr: np.ndarray) -> list[int]:
        if not len(arr):
            return []
        return self.field.from_bits(arr.astype(np.uint8))

    def element(self, row: np.ndarray) -> int:
        return int.from_bytes(np.packbits(row.astype(np.uint8), bitorder="little").tobytes(), "little")


@lru_cache(maxsize=None)
def _kernels(fld: GF2m) -> _BitKernels:
    return _BitKernels(fld)


def _trim_rows(arr: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(arr.any(axis=1))
    return arr[: nz[-1] + 1] if nz.size else arr[:0]


def _rdiv_rows(kr: _BitKernels, a: np.ndarray, b: np.ndarray) -> tuple[list[int], np.ndarray]:
    fld = kr.field
    db = len(b) - 1
    r = a.copy()
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    b_frob = [b[:db]]
    lead_inv = [fld.inv(kr.element(b[db]))]
    while len(r) - 1 >= db:
        s = len(r) - 1 - db
        while len(b_frob) <= s:
            b_frob.append(np.remainder(b_frob[-1] @ kr.square, 2))
            lead_inv.append(fld.sqr(lead_inv[-1]))
        coef = fld.mul(kr.element(r[-1]), lead_inv[s])
        q[s] = coef
        if db:
            r[s : s + db] = np.remainder(r[s : s + db] + b_frob[s] @ kr.times(coef), 2)
        r = _trim_rows(r[:-1])
    return _trim(q), r


def _sym_mul_rows(kr: _BitKernels, f: Sequence[int], g: np.ndarray) -> np.ndarray:
    if not f or not len(g):
        return g[:0]
    out = np.zeros((len(f) + len(g) - 1, kr.m), dtype=np.float32)
    gi = g
    for i, fi in enumerate(f):
        if i:
            gi = np.remainder(gi @ kr.square, 2)
        if fi:
            out[i : i + len(g)] += gi @ kr.times(fi)
    return _trim_rows(np.remainder(out, 2))


def _add_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] = np.remainder(out[: len(b)] + b, 2)
    return _trim_rows(out)


def _leea_fast(fld: GF2m, a: list[int], b: list[int], d_stop: int) -> tuple[list[int], list[int]]:
    """Same remainder and ``u`` sequence as :func:`_leea`, on bit matrices."""
    if d_stop <= 0:
        raise ValueError("stopping degree must be positive")
    if len(a) < len(b) or not b:
        raise ValueError("need deg a >= deg b >= 0")
    if len(a) - 1 < d_stop:
        return list(a), []
    kr = _kernels(fld)
    r_prev, r_cur = kr.to_array(a), kr.to_array(b)
    u_prev, u_cur = kr.to_array([]), kr.to_array([1])
    while len(r_cur) - 1 >= d_stop:
        q, r = _rdiv_rows(kr, r_prev, r_cur)
        r_prev, r_cur = r_cur, r
        u_prev, u_cur = u_cur, _add_rows(u_prev, _sym_mul_rows(kr, q, u_cur))
    return kr.to_list(r_cur), kr.to_list(u_cur)


def leea(
    a: LinearizedPoly, b: LinearizedPoly, d_stop: int, trace: list | None = None
) -> tuple[LinearizedPoly, LinearizedPoly, LinearizedPoly]:
    """Extended Euclid on linearized polynomials with an early stop.

    Runs the remainder sequence ``r_-1 = a, r_0 = b, r_i = rdiv(r_{i-2}, r_{i-1})``
    with cofactors ``u_i = u_{i-2} - q_i (x) u_{i-1}`` (same for ``v``) and
    returns the first triple whose remainder has q-degree below ``d_stop``.
    Every triple satisfies ``r = u (x) b + v (x) a``.  If ``trace`` is a list,
    each visited triple is appended to it as coefficient lists.
    """
    a._same(b)
    fld = a.field
    r, u, v = _leea(fld, list(a.coeffs), list(b.coeffs), d_stop, True, trace)
    return LinearizedPoly(fld, r), LinearizedPoly(fld, u), LinearizedPoly(fld, v)


# ---------------------------------------------------------------------------
# transforms


def _cyclic_correlate(fld: GF2m, f: Sequence[int], basis: Sequence[int]) -> list[int]:
    """``out_j = sum_i f_i basis[(i + j) mod m]`` for ``j < m``."""
    m = fld.m
    fr = list(f) + [0] * (m - len(f))
    fr.reverse()
    prod = fld.poly_mul(fr, list(basis) * 2)
    return prod[m - 1 : 2 * m - 1]


def q_transform(f: LinearizedPoly, nb: NormalBasis) -> LinearizedPoly:
    """Polynomial whose coefficients are ``f(alpha^[j])``, ``j < m``."""
    if f.field != nb.field:
        raise ValueError("field mismatch")
    if len(f.coeffs) > nb.field.m:
        raise ValueError("q-degree must be below m")
    if not f.coeffs:
        return f
    return LinearizedPoly(f.field, _cyclic_correlate(f.field, f.coeffs, nb.conjugates))


def inverse_q_transform(big_f: LinearizedPoly, nb: NormalBasis) -> LinearizedPoly:
    """Inverse of :func:`q_transform`: ``f_i = F(dual^[i])``."""
    if big_f.field != nb.field:
        raise ValueError("field mismatch")
    if len(big_f.coeffs) > nb.field.m:
        raise ValueError("q-degree must be below m")
    if not big_f.coeffs:
        return big_f
    return LinearizedPoly(big_f.field, _cyclic_correlate(big_f.field, big_f.coeffs, nb.dual))


def _eval_from_transform(fld: GF2m, values: Sequence[int], points: Sequence[int], nb: NormalBasis) -> list[int]:
    """Evaluate a map known on the conjugate basis at arbitrary points.

    With ``F`` the ``m x m`` bit matrix of transform values (row ``j`` the
    bits of ``f(alpha^[j])``) and ``G`` the normal-basis coordinates of the
    points (one row per point), the images are the rows of ``G F`` over GF(2).
    """
    if not points:
        return []
    m = fld.m
    vals = list(values) + [0] * (m - len(values))
    big_f = fld.to_bits(vals).astype(np.int32)
    coords = [nb.coords_packed(p) for p in points]
    g = fld.to_bits(coords).astype(np.int32)
    prod = (g @ big_f) & 1
    return fld.from_bits(prod.astype(np.uint8))


def multipoint_eval(f: LinearizedPoly, points: Sequence[int], nb: NormalBasis) -> list[int]:
    """``[f(p) for p in points]`` through one GF(2) matrix product."""
    fld = f.field
    g = reduce_frobenius(f)
    values = q_transform(g, nb).coeffs
    return _eval_from_transform(fld, values, points, nb)


def fast_sym_mul(f: LinearizedPoly, g: LinearizedPoly, nb: NormalBasis) -> LinearizedPoly:
    """``f (x) g`` modulo ``x^[m] - x`` via the transform domain.

    The product is determined by its values on the conjugates, which are
    ``f(g(alpha^[j]))``: transform ``g``, evaluate ``f`` at those points and
    transform back.
    """
    f._same(g)
    fld = f.field
    gv = q_transform(reduce_frobenius(g), nb).coeffs
    if not gv or not f.coeffs:
        return LinearizedPoly(fld)
    fv = q_transform(reduce_frobenius(f), nb).coeffs
    h = _eval_from_transform(fld, fv, list(gv) + [0] * (fld.m - len(gv)), nb)
    return inverse_q_transform(LinearizedPoly(fld, h), nb)
