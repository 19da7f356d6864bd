"""Arithmetic in GF(2)[x] and GF(2^m).

Elements of GF(2^m) are plain integers: bit ``i`` is the coefficient of
``x^i`` in the polynomial representation modulo the field modulus.  The
:class:`GF2m` object carries the modulus and performs all operations on those
integers; :class:`FieldElement` is a thin wrapper with operators for callers
that prefer values which know their field.

Carry-less products are computed by spreading operand bits into byte-wide
slots, multiplying with the interpreter's big integers and reading the slot
parities back.  Bulk polynomial products over GF(2^m) use the same idea in
two dimensions (Kronecker substitution) on top of GMP.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import gmpy2
import numpy as np

from . import gf2

MAX_DEGREE = 128

_TO_SLOTS = bytes.maketrans(b"01", b"\x00\x01")
_SLOT_PARITY = bytes(b"01" * 128)


class FieldMismatchError(ValueError):
    """Operands come from different fields."""


# ---------------------------------------------------------------------------
# GF(2)[x] on integers


def clmul(a: int, b: int) -> int:
    """Carry-less (GF(2)[x]) product of two nonnegative integers."""
    if not a or not b:
        return 0
    la, lb = a.bit_length(), b.bit_length()
    short = la if la < lb else lb
    width = 1
    while short >= 1 << (8 * width):
        width += 1
    sep = "0" * (width - 1)
    sa = int.from_bytes(sep.join(bin(a)[2:]).encode().translate(_TO_SLOTS), "big")
    sb = int.from_bytes(sep.join(bin(b)[2:]).encode().translate(_TO_SLOTS), "big")
    p = sa * sb
    nslots = la + lb - 1
    raw = p.to_bytes(nslots * width, "big")
    if width > 1:
        raw = raw[width - 1 :: width]
    return int(raw.translate(_SLOT_PARITY), 2)


def clsquare(a: int) -> int:
    """Square in GF(2)[x]: bit ``i`` moves to bit ``2i``."""
    return int("0".join(bin(a)[2:]), 2)


def poly_mod(a: int, f: int) -> int:
    """Remainder of ``a`` modulo ``f`` in GF(2)[x]."""
    lf = f.bit_length()
    la = a.bit_length()
    while la >= lf:
        a ^= f << (la - lf)
        la = a.bit_length()
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_divmod(a: int, f: int) -> tuple[int, int]:
    """Quotient and remainder in GF(2)[x]."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    q = 0
    lf = f.bit_length()
    la = a.bit_length()
    while la >= lf:
        q |= 1 << (la - lf)
        a ^= f << (la - lf)
        la = a.bit_length()
    return q, a


def _multiplicative_order(two: int, d: int) -> int:
    k, v = 1, two % d
    while v != 1:
        v = v * two % d
        k += 1
    return k


def _split_equal_degree(f: int, k: int) -> list[int]:
    """Irreducible factors of a squarefree ``f`` whose factors all have degree ``k``.

    Uses the trace map ``b + b^2 + ... + b^(2^(k-1)) mod f``, which is 0 or 1
    on each factor; trial elements ``b = x, x + 1, x^2, ...`` are taken in order.
    """
    if f.bit_length() - 1 == k:
        return [f]
    b = 2
    while True:
        t, acc = b, b
        for _ in range(k - 1):
            t = poly_mod(clsquare(t), f)
            acc ^= t
        g = poly_gcd(f, acc)
        if 0 < g.bit_length() - 1 < f.bit_length() - 1:
            q, _ = poly_divmod(f, g)
            return _split_equal_degree(g, k) + _split_equal_degree(q, k)
        b += 1


@lru_cache(maxsize=None)
def factor_xm1(m: int) -> tuple[int, ...]:
    """Distinct irreducible factors of ``x^m - 1`` over GF(2), sorted."""
    odd = m
    while odd % 2 == 0:
        odd //= 2
    cyclo: dict[int, int] = {}
    out: list[int] = []
    for d in range(1, odd + 1):
        if odd % d:
            continue
        phi = (1 << d) | 1
        for e, pe in cyclo.items():
            if d % e == 0:
                phi, rem = poly_divmod(phi, pe)
                assert rem == 0
        cyclo[d] = phi
        out.extend(_split_equal_degree(phi, _multiplicative_order(2, d) if d > 1 else 1))
    return tuple(sorted(out))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class _SparseReducer:
    """Reduction modulo a polynomial ``x^n + low(x)`` with few low terms."""

    __slots__ = ("n", "mask", "shifts")

    def __init__(self, f: int):
        self.n = f.bit_length() - 1
        self.mask = (1 << self.n) - 1
        low = f & self.mask
        self.shifts = [i for i in range(self.n) if (low >> i) & 1]

    def __call__(self, r: int) -> int:
        n, mask, shifts = self.n, self.mask, self.shifts
        while r >> n:
            h = r >> n
            r &= mask
            for s in shifts:
                r ^= h << s
        return r


def is_irreducible(f: int) -> bool:
    """Rabin's irreducibility test for a polynomial over GF(2)."""
    n = f.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if not f & 1:
        return False
    if bin(f).count("1") % 2 == 0:  # divisible by x + 1
        return False
    red = _SparseReducer(f)
    # early exit on small factors: gcd(x^(2^i) - x, f) for small i
    x = 2
    powers = {0: x}
    cur = x
    for i in range(1, n + 1):
        cur = red(clsquare(cur))
        powers[i] = cur
        if i <= 16 and 2 * i <= n and poly_gcd(f, cur ^ x) != 1:
            return False
    if powers[n] != x:
        return False
    for p in _prime_factors(n):
        if poly_gcd(f, powers[n // p] ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(m: int) -> int:
    """Smallest irreducible polynomial of degree ``m`` over GF(2), as an integer.

    Candidates are scanned in increasing integer order, so the result is the
    lexicographically smallest one when coefficients are read from the constant
    term upward.
    """
    if m < 1:
        raise ValueError("degree must be positive")
    if m == 1:
        return 0b11
    base = 1 << m
    for low in range(1, base, 2):
        if is_irreducible(base | low):
            return base | low
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def poly_str(f: int, var: str = "x") -> str:
    """Human-readable form such as ``x^3 + x + 1``."""
    if f == 0:
        return "0"
    terms = []
    for i in range(f.bit_length() - 1, -1, -1):
        if (f >> i) & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# GF(2^m)


class GF2m:
    """The field GF(2)[x] / (modulus) with elements as integers."""

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in [1, {MAX_DEGREE}]")
        if modulus is None:
            modulus = find_irreducible(m)
        if modulus.bit_length() != m + 1 or not modulus & 1:
            raise ValueError("modulus must have degree m and a nonzero constant term")
        if not is_irreducible(modulus):
            raise ValueError("modulus is reducible")
        self.m = m
        self.modulus = modulus
        self.mask = (1 << m) - 1
        self.order = 1 << m
        self.nbytes = (m + 7) // 8
        self._reduce = _SparseReducer(modulus)
        self._low_shifts = self._reduce.shifts
        # trace is linear: Tr(a) = parity(a & trace_mask)
        tm = 0
        for j in range(m):
            if self._trace_slow(1 << j):
                tm |= 1 << j
        self.trace_mask = tm

    # -- identity -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus={poly_str(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    # -- scalar arithmetic --------------------------------------------------
    def check(self, a: int) -> int:
        if not 0 <= a <= self.mask:
            raise ValueError(f"{a} is not an element of GF(2^{self.m})")
        return a

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        # bytes slots hold up to 255 overlapping terms; m <= 128 keeps us below
        sa = int.from_bytes(bin(a)[2:].encode().translate(_TO_SLOTS), "big")
        sb = int.from_bytes(bin(b)[2:].encode().translate(_TO_SLOTS), "big")
        p = sa * sb
        r = int(p.to_bytes(a.bit_length() + b.bit_length() - 1, "big").translate(_SLOT_PARITY), 2)
        m = self.m
        while r >> m:
            h = r >> m
            r &= self.mask
            for s in self._low_shifts:
                r ^= h << s
        return r

    def sqr(self, a: int) -> int:
        r = int("0".join(bin(a)[2:]), 2)
        m = self.m
        while r >> m:
            h = r >> m
            r &= self.mask
            for s in self._low_shifts:
                r ^= h << s
        return r

    def frobenius(self, a: int, i: int) -> int:
        """``a^(2^i)`` by repeated squaring (``i`` taken modulo m)."""
        if i < 0:
            raise ValueError("Frobenius exponent must be nonnegative")
        for _ in range(i % self.m):
            a = self.sqr(a)
        return a

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^m)")
        u, v = a, self.modulus
        g1, g2 = 1, 0
        while u != 1:
            j = u.bit_length() - v.bit_length()
            if j < 0:
                u, v = v, u
                g1, g2 = g2, g1
                j = -j
            u ^= v << j
            g1 ^= g2 << j
        return g1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.sqr(a)
            e >>= 1
        return r

    def _trace_slow(self, a: int) -> int:
        t, c = 0, a
        for _ in range(self.m):
            t ^= c
            c = self.sqr(c)
        return t

    def trace(self, a: int) -> int:
        return bin(a & self.trace_mask).count("1") & 1

    # -- encoding -----------------------------------------------------------
    def to_bytes(self, a: int) -> bytes:
        return a.to_bytes(self.nbytes, "little")

    def from_bytes(self, data: bytes) -> int:
        if len(data) != self.nbytes:
            raise ValueError("wrong encoded length")
        return self.check(int.from_bytes(data, "little"))

    # -- vectorised helpers --------------------------------------------------
    def to_bits(self, values: Sequence[int]) -> np.ndarray:
        """``(len(values), m)`` uint8 array of coefficient bits."""
        nb = self.nbytes
        raw = b"".join(v.to_bytes(nb, "little") for v in values)
        arr = np.frombuffer(raw, dtype=np.uint8).reshape(len(values), nb)
        return np.unpackbits(arr, axis=1, bitorder="little")[:, : self.m]

    def from_bits(self, bits: np.ndarray) -> list[int]:
        """Inverse of :meth:`to_bits` (extra columns must already be reduced)."""
        packed = np.packbits(np.ascontiguousarray(bits[:, : self.m]), axis=1, bitorder="little")
        raw = packed.tobytes()
        w = packed.shape[1]
        return [int.from_bytes(raw[i : i + w], "little") for i in range(0, len(raw), w)]

    def reduce_bits(self, bits: np.ndarray) -> np.ndarray:
        """Reduce a bit array with up to ``2m - 1`` columns modulo the field modulus."""
        return fold_axis(bits, self.m, self._low_shifts, axis=1)

    def poly_mul_bits(self, u: Sequence[int], v: Sequence[int]) -> np.ndarray:
        """Unreduced coefficient bits of the product of two polynomials over GF(2^m).

        Row ``i`` of the result holds the ``2m - 1`` GF(2)[x] coefficients of
        the degree-``i`` coefficient before reduction by the field modulus.
        """
        m = self.m
        lu, lv = len(u), len(v)
        if lu == 0 or lv == 0:
            return np.zeros((0, 2 * m - 1), dtype=np.uint8)
        terms = min(lu, lv) * m
        width = 1
        while terms >= 1 << (8 * width):
            width += 1
        slots = 2 * m - 1
        pu = _kronecker_pack(self.to_bits(u), slots, width)
        pv = _kronecker_pack(self.to_bits(v), slots, width)
        length = lu + lv - 1
        raw = (pu * pv).to_bytes(length * slots * width, "little")
        arr = np.frombuffer(raw, dtype=np.uint8).reshape(length, slots, width)
        return arr[:, :, 0] & 1

    def scale(self, c: int, v: Sequence[int]) -> list[int]:
        """``[c * x for x in v]`` with one big-integer product."""
        if not c or not v:
            return [0] * len(v)
        return self.from_bits(self.reduce_bits(self.poly_mul_bits([c], v)))

    def sqr_vec(self, v: Sequence[int]) -> list[int]:
        """``[x^2 for x in v]``: spread the bits, then reduce."""
        if not v:
            return []
        bits = self.to_bits(v)
        wide = np.zeros((len(v), 2 * self.m - 1), dtype=np.uint8)
        wide[:, ::2] = bits
        return self.from_bits(self.reduce_bits(wide))

    def poly_mul(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        """Product of two polynomials over GF(2^m) given as coefficient lists."""
        if not u or not v:
            return []
        return self.from_bits(self.reduce_bits(self.poly_mul_bits(u, v)))

    # -- linear algebra over GF(2) -----------------------------------------
    def coordinates(self, a: int, basis: Sequence[int]) -> list[int]:
        """Coordinates of ``a`` in a GF(2)-basis of the field."""
        return coordinate_map(self, tuple(basis)).coords(a)

    def random(self, rng) -> int:
        return rng.getrandbits(self.m)


def _kronecker_pack(bits: np.ndarray, slots: int, width: int):
    rows, m = bits.shape
    buf = np.zeros((rows, slots, width), dtype=np.uint8)
    buf[:, :m, 0] = bits
    return gmpy2.mpz(int.from_bytes(buf.tobytes(), "little"))


def fold_axis(bits: np.ndarray, n: int, shifts: Sequence[int], axis: int) -> np.ndarray:
    """Reduce along ``axis`` modulo ``x^n + sum(x^s for s in shifts)``.

    Entries at index ``i >= n`` are folded back onto ``i - n + s``.  The
    returned array has exactly ``n`` entries along ``axis``.
    """
    a = np.moveaxis(bits, axis, 0)
    top = max(shifts) if shifts else 0
    while a.shape[0] > n:
        hi = a[n:]
        h = hi.shape[0]
        out = np.zeros((max(n, top + h),) + a.shape[1:], dtype=np.uint8)
        out[:n] = a[:n]
        for s in shifts:
            out[s : s + h] ^= hi
        a = out
    if a.shape[0] < n:
        pad = np.zeros((n - a.shape[0],) + a.shape[1:], dtype=np.uint8)
        a = np.concatenate([a, pad])
    return np.moveaxis(a, 0, axis)


class CoordinateMap:
    """Coordinates with respect to a fixed GF(2)-basis of GF(2^m)."""

    def __init__(self, fld: GF2m, basis: Sequence[int]):
        if len(basis) != fld.m:
            raise ValueError("basis must have m elements")
        try:
            inv = gf2.inverse(list(basis))
        except gf2.SingularMatrixError as exc:
            raise gf2.SingularMatrixError("basis elements are linearly dependent") from exc
        # element a = XOR over j of basis[j]*c_j; with B rows = basis,
        # a = c @ B so c = a @ inv
        self.field = fld
        self.basis = tuple(basis)
        self._inv = inv

    def coords_packed(self, a: int) -> int:
        return gf2.vec_mat(a, self._inv)

    def coords(self, a: int) -> list[int]:
        c = self.coords_packed(a)
        return [(c >> i) & 1 for i in range(self.field.m)]

    def combine(self, c: int) -> int:
        return gf2.vec_mat(c, self.basis)


@lru_cache(maxsize=64)
def coordinate_map(fld: GF2m, basis: tuple[int, ...]) -> CoordinateMap:
    return CoordinateMap(fld, basis)


@lru_cache(maxsize=None)
def get_field(m: int) -> GF2m:
    """The field of degree ``m`` with the default modulus (cached)."""
    return GF2m(m)


# ---------------------------------------------------------------------------
# element wrapper


class FieldElement:
    """An element of a specific GF(2^m), with arithmetic operators."""

    __slots__ = ("field", "value")

    def __init__(self, fld: GF2m, value: int):
        self.field = fld
        self.value = fld.check(value)

    def _other(self, other: "FieldElement") -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented  # type: ignore[return-value]
        if other.field != self.field:
            raise FieldMismatchError("operands belong to different fields")
        return other.value

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.value ^ v)

    __sub__ = __add__

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.mul(self.value, v))

    def __truediv__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.field, self.field.div(self.value, v))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __neg__(self):
        return self

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({poly_str(self.value)} in GF(2^{self.field.m}))"

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, i: int) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, i))

    def trace(self) -> int:
        return self.field.trace(self.value)

    def to_bytes(self) -> bytes:
        return self.field.to_bytes(self.value)


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, i: int) -> FieldElement:
    return a.frobenius(i)


def coordinates(a: FieldElement, basis: Sequence[FieldElement]) -> list[int]:
    """Bit vector ``c`` with ``a = sum(c[i] * basis[i])``."""
    for b in basis:
        if b.field != a.field:
            raise FieldMismatchError("basis and element belong to different fields")
    return a.field.coordinates(a.value, [b.value for b in basis])


# ---------------------------------------------------------------------------
# normal bases


@dataclass(frozen=True)
class NormalBasis:
    """A normal element, its conjugates and the trace-dual basis.

    ``dual[j]`` satisfies ``Tr(conjugates[i] * dual[j]) = [i == j]``.  The dual
    of a normal basis is itself normal, so ``dual[j]`` is the ``j``-th
    conjugate of ``dual[0]``.
    """

    field: GF2m
    alpha: int
    conjugates: tuple[int, ...]
    dual: tuple[int, ...]
    _coords: CoordinateMap = dc_field(repr=False, compare=False)

    def coords_packed(self, a: int) -> int:
        """Coordinates of ``a`` in the conjugate basis, bit ``j`` for ``alpha^[j]``."""
        return self._coords.coords_packed(a)


def conjugates(fld: GF2m, a: int) -> list[int]:
    out = [a]
    for _ in range(fld.m - 1):
        out.append(fld.sqr(out[-1]))
    return out


def _normality_maps(fld: GF2m) -> list[list[int]]:
    """One GF(2)-linear map per irreducible factor ``p`` of ``x^m - 1``.

    The map is ``a -> L(a)`` with ``L`` the linearized form of ``(x^m - 1) / p``;
    ``a`` is normal iff no map sends it to zero.  Each map is returned as the
    list of images of ``1, x, ..., x^(m-1)``.
    """
    m = fld.m
    basis_conj = [conjugates(fld, 1 << t) for t in range(m)]
    maps = []
    for p in factor_xm1(m):
        cof, _ = poly_divmod((1 << m) | 1, p)
        taps = [j for j in range(m) if (cof >> j) & 1]
        images = []
        for conj in basis_conj:
            acc = 0
            for j in taps:
                acc ^= conj[j]
            images.append(acc)
        maps.append(images)
    return maps


def _smallest_outside_kernels(maps: list[list[int]], m: int) -> int:
    """Smallest positive integer ``a < 2^m`` that no map sends to zero."""
    # lead[i]: number of low basis vectors killed by map i
    lead = []
    for images in maps:
        z = 0
        while z < m and not images[z]:
            z += 1
        lead.append(z)

    def image(images: list[int], a: int) -> int:
        acc, t = 0, 0
        while a:
            if a & 1:
                acc ^= images[t]
            a >>= 1
            t += 1
        return acc

    def search(c: int, h: int) -> int | None:
        # smallest b < 2^h with c + b outside every kernel
        for images, z in zip(maps, lead):
            if h <= z and not image(images, c):
                return None  # c + span(x^0..x^(h-1)) lies in this kernel
        if h == 0:
            return 0
        low = search(c, h - 1)
        if low is not None:
            return low
        high = search(c | (1 << (h - 1)), h - 1)
        return None if high is None else high | (1 << (h - 1))

    for top in range(m):
        b = search(1 << top, top)
        if b is not None:
            return (1 << top) | b
    raise AssertionError("no normal element found")  # pragma: no cover


@lru_cache(maxsize=None)
def find_normal_basis(fld: GF2m) -> NormalBasis:
    """Normal basis generated by the smallest normal element, with its dual.

    Non-normal elements form the union of the kernels from
    :func:`_normality_maps`, so the smallest normal element is found by a
    bitwise search that prunes every prefix whose completions all lie in
    one kernel.
    """
    m = fld.m
    alpha = _smallest_outside_kernels(_normality_maps(fld), m)
    conj = conjugates(fld, alpha)
    if gf2.rank(conj) != m:
        raise AssertionError("normality test disagrees with the rank check")
    # Gram matrix T[i][j] = Tr(conj_i * x^j); dual elements d with
    # Tr(conj_i * d) = delta, i.e. T d = e_i for d in coordinates
    t_rows = []
    for c in conj:
        row = 0
        for j in range(m):
            if fld.trace(fld.mul(c, 1 << j)):
                row |= 1 << j
        t_rows.append(row)
    t_inv = gf2.inverse(t_rows)
    # column i of T^-1 is the dual element for conj_i
    cols = gf2.transpose(t_inv, m)
    dual = tuple(cols)
    return NormalBasis(fld, alpha, tuple(conj), dual, CoordinateMap(fld, conj))
