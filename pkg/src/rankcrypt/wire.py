"""Byte layouts for keys and ciphertexts.

Every object starts with an 8-byte header: ``b"RQCEGK"``, the scheme id and
the parameter-row id.  The body is a little-endian bit string in which field
elements take exactly ``m`` bits each with no padding between them; only the
end of a section is padded to a byte boundary, with zero bits.

Sections:

* BWE public key: seed (40 bytes) then ``s`` (``n`` elements).
* MultiNH public key: ``g1``, ``g2``, ``h``, ``s`` in one bit string.
* MultiUR public key: ``g1``, ``g2``, ``H``, ``S`` in one bit string.
* BWE and MultiNH ciphertexts: ``u`` and ``v`` as two byte-aligned sections.
* MultiUR ciphertext: ``U`` then ``V`` in one bit string.
* Secret key: the 40-byte secret seed.

Generators are stored as a weight-``t`` vector: the reduced echelon basis of
the support (``t`` elements, increasing leading bit) followed by the
``t x n`` coefficient bit matrix, row ``i`` giving the positions that contain
basis element ``i``.  The encoding of a vector is therefore unique.
Matrices are stored row by row.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .galois import GF2m
from .params import BWE, NH, SCHEME_IDS, UR, SEED_BYTES, SchemeParams, get_params
from .rank_linalg import support_basis
from .sampling import combine
from .schemes import Ciphertext, PublicKey, SecretKey, _freeze, expand_public

MAGIC = b"RQCEGK"
HEADER_BYTES = 8
KEM_COMMITMENT_BYTES = 64


class FormatError(ValueError):
    """Malformed serialized object; ``offset`` is the first offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


# ---------------------------------------------------------------------------
# bit strings


class _BitWriter:
    def __init__(self):
        self._parts: list[np.ndarray] = []

    def elements(self, fld: GF2m, values) -> None:
        values = list(values)
        if values:
            self._parts.append(fld.to_bits(values).reshape(-1))

    def bits(self, value: int, width: int) -> None:
        if width:
            raw = value.to_bytes((width + 7) // 8, "little")
            arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
            self._parts.append(arr[:width])

    def getvalue(self) -> bytes:
        if not self._parts:
            return b""
        return np.packbits(np.concatenate(self._parts), bitorder="little").tobytes()


class _BitReader:
    def __init__(self, data: bytes, base: int):
        self._bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
        self._pos = 0
        self.base = base  # byte offset of ``data`` inside the whole object

    @property
    def offset(self) -> int:
        return self.base + self._pos // 8

    def elements(self, fld: GF2m, count: int) -> list[int]:
        end = self._pos + count * fld.m
        chunk = self._bits[self._pos : end].reshape(count, fld.m)
        self._pos = end
        return fld.from_bits(chunk) if count else []

    def bits(self, width: int) -> int:
        chunk = self._bits[self._pos : self._pos + width]
        self._pos += width
        return int.from_bytes(np.packbits(chunk, bitorder="little").tobytes(), "little")

    def finish(self) -> None:
        if self._bits[self._pos :].any():
            raise FormatError("nonzero padding bits", self.offset)


def _section(data: bytes, start: int, length: int) -> bytes:
    if start + length > len(data):
        raise FormatError("object truncated", len(data))
    return data[start : start + length]


# ---------------------------------------------------------------------------
# headers


def header(p: SchemeParams) -> bytes:
    if not 1 <= p.row_id <= 255:
        raise ValueError("only registry parameter rows can be serialized")
    return MAGIC + bytes([p.scheme_id, p.row_id])


def parse_header(data: bytes, expect: SchemeParams | None = None) -> SchemeParams:
    if len(data) < HEADER_BYTES:
        raise FormatError("object shorter than its header", len(data))
    if data[:6] != MAGIC:
        raise FormatError("bad magic", 0)
    try:
        p = get_params(data[7])
    except ValueError:
        raise FormatError("unknown parameter row", 7) from None
    if data[6] != SCHEME_IDS[p.scheme]:
        raise FormatError("scheme id does not match the parameter row", 6)
    if expect is not None and (expect.scheme_id, expect.row_id) != (p.scheme_id, p.row_id):
        raise FormatError("object belongs to a different parameter set", 6)
    return p


def _check_length(data: bytes, expected: int) -> None:
    if len(data) != expected:
        raise FormatError(f"expected {expected} bytes, got {len(data)}", min(len(data), expected))


# ---------------------------------------------------------------------------
# weight-t vectors


def _write_weighted(w: _BitWriter, fld: GF2m, v, t: int) -> None:
    basis = support_basis(v)
    if len(basis) != t:
        raise ValueError(f"vector has rank weight {len(basis)}, expected {t}")
    w.elements(fld, basis)
    for b in basis:
        row = 0
        lead = b.bit_length() - 1
        for j, x in enumerate(v):
            # echelon basis: the coefficient of b in x is the bit at b's lead
            if (x >> lead) & 1:
                row |= 1 << j
        w.bits(row, len(v))


def _read_weighted(r: _BitReader, fld: GF2m, n: int, t: int) -> list[int]:
    start = r.offset
    basis = r.elements(fld, t)
    if gf2.echelon_basis(basis) != basis:
        raise FormatError("support basis is not in reduced echelon form", start)
    coef_start = r.offset
    coef = [r.bits(n) for _ in range(t)]
    if gf2.rank(coef) != t:
        raise FormatError("coefficient matrix is rank deficient", coef_start)
    return combine(basis, coef, n)


# ---------------------------------------------------------------------------
# public keys


def serialize_pk(pk: PublicKey) -> bytes:
    p = pk.params
    fld = p.field
    if p.scheme == BWE:
        if pk.seed is None:
            raise ValueError("BWE public keys carry their generator seed")
        w = _BitWriter()
        w.elements(fld, pk.s)
        return header(p) + pk.seed + w.getvalue()
    w = _BitWriter()
    _write_weighted(w, fld, pk.g1, p.t1)
    _write_weighted(w, fld, pk.g2, p.t2)
    if p.scheme == NH:
        w.elements(fld, pk.h)
        w.elements(fld, pk.s)
    else:
        w.elements(fld, (x for row in pk.h for x in row))
        w.elements(fld, (x for row in pk.s for x in row))
    return header(p) + w.getvalue()


def deserialize_pk(data: bytes, expect: SchemeParams | None = None) -> PublicKey:
    p = parse_header(data, expect)
    fld = p.field
    _check_length(data, HEADER_BYTES + p.pk_bytes)
    if p.scheme == BWE:
        seed = data[HEADER_BYTES : HEADER_BYTES + SEED_BYTES]
        r = _BitReader(data[HEADER_BYTES + SEED_BYTES :], HEADER_BYTES + SEED_BYTES)
        s = r.elements(fld, p.n)
        r.finish()
        g1, g2, h = expand_public(p, seed)
        return PublicKey(p, tuple(g1), tuple(g2), tuple(h), tuple(s), bytes(seed))
    r = _BitReader(data[HEADER_BYTES:], HEADER_BYTES)
    g1 = _read_weighted(r, fld, p.n1, p.t1)
    g2 = _read_weighted(r, fld, p.n2, p.t2)
    if p.scheme == NH:
        h = r.elements(fld, p.n2)
        s = r.elements(fld, p.n2)
    else:
        hv = r.elements(fld, p.z * p.z)
        sv = r.elements(fld, p.z * p.n1)
        h = [hv[i * p.z : (i + 1) * p.z] for i in range(p.z)]
        s = [sv[i * p.n1 : (i + 1) * p.n1] for i in range(p.z)]
    r.finish()
    return PublicKey(p, tuple(g1), tuple(g2), _freeze(h), _freeze(s))


# ---------------------------------------------------------------------------
# ciphertexts


def _flat(x) -> list[int]:
    if x and isinstance(x[0], tuple):
        return [e for row in x for e in row]
    return list(x)


def ciphertext_body(ct: Ciphertext) -> bytes:
    p = ct.params
    fld = p.field
    u, v = _flat(ct.u), _flat(ct.v)
    if p.scheme == UR:
        w = _BitWriter()
        w.elements(fld, u)
        w.elements(fld, v)
        return w.getvalue()
    out = b""
    for part in (u, v):
        w = _BitWriter()
        w.elements(fld, part)
        out += w.getvalue()
    return out



def serialize_ct(ct: Ciphertext) -> bytes:
    return header(ct.params) + ciphertext_body(ct)


def _parse_ct_body(p: SchemeParams, body: bytes, base: int) -> Ciphertext:
    fld = p.field
    if p.scheme == UR:
        r = _BitReader(body, base)
        u = r.elements(fld, p.n2 * p.z)
        v = r.elements(fld, p.n2 * p.n1)
        r.finish()
        um = [u[i * p.z : (i + 1) * p.z] for i in range(p.n2)]
        vm = [v[i * p.n1 : (i + 1) * p.n1] for i in range(p.n2)]
        return Ciphertext(p, _freeze(um), _freeze(vm))
    half = p.ct_bytes // 2
    parts = []
    for i in range(2):
        r = _BitReader(body[i * half : (i + 1) * half], base + i * half)
        parts.append(r.elements(fld, p.n))
        r.finish()
    u, v = parts
    if p.scheme == NH:
        u = [u[i * p.n1 : (i + 1) * p.n1] for i in range(p.n2)]
        v = [v[i * p.n1 : (i + 1) * p.n1] for i in range(p.n2)]
    return Ciphertext(p, _freeze(u), _freeze(v))


def deserialize_ct(data: bytes, expect: SchemeParams | None = None) -> Ciphertext:
    p = parse_header(data, expect)
    _check_length(data, HEADER_BYTES + p.ct_bytes)
    return _parse_ct_body(p, data[HEADER_BYTES:], HEADER_BYTES)


def serialize_kem_ct(ct: Ciphertext, d: bytes) -> bytes:
    """Ciphertext followed by the 64-byte commitment."""
    if len(d) != KEM_COMMITMENT_BYTES:
        raise ValueError("commitment must be 64 bytes")
    return serialize_ct(ct) + d


def deserialize_kem_ct(data: bytes, expect: SchemeParams | None = None) -> tuple[Ciphertext, bytes]:
    p = parse_header(data, expect)
    _check_length(data, HEADER_BYTES + p.ct_bytes + KEM_COMMITMENT_BYTES)
    end = HEADER_BYTES + p.ct_bytes
    return _parse_ct_body(p, data[HEADER_BYTES:end], HEADER_BYTES), data[end:]


# ---------------------------------------------------------------------------
# secret keys


def serialize_sk(sk: SecretKey) -> bytes:
    return header(sk.params) + sk.seed


def deserialize_sk(data: bytes, expect: SchemeParams | None = None) -> SecretKey:
    p = parse_header(data, expect)
    _check_length(data, HEADER_BYTES + SEED_BYTES)
    return SecretKey(p, bytes(data[HEADER_BYTES:]))


# ---------------------------------------------------------------------------
# text encoding


def to_format(data: bytes, fmt: str) -> bytes:
    if fmt == "bin":
        return data
    if fmt == "hex":
        return data.hex().encode("ascii") + b"\n"
    raise ValueError(f"unknown format {fmt!r}")


def from_format(raw: bytes, fmt: str | None = None) -> bytes:
    """Decode a file body; ``fmt=None`` accepts hex text or raw binary."""
    if fmt == "bin" or (fmt is None and raw.startswith(MAGIC)):
        return raw
    text = raw.strip()
    try:
        return bytes.fromhex(text.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise FormatError("invalid hex encoding", 0) from None
