"""The three EGK-based encryption variants and the hash-based KEM.

All randomness is explicit: key generation consumes two 40-byte seeds (secret
and public), encryption a 40-byte ``theta``.  The secret key is the secret
seed alone; ``x, y`` (or ``X, Y``) are re-derived when needed.

* ``BWE``: ring elements of length ``n = n1 n2`` modulo ``N(X)`` of degree
  ``n``, blockwise secret and encryption errors.
* ``MultiNH``: ring of degree ``n2``, ciphertexts are ``n2 x n1`` matrices
  multiplied column by column in the ring, non-homogeneous encryption errors.
* ``MultiUR``: unstructured ``z x z`` matrix ``H`` and plain matrix products.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .codes import DecodeOutcome, EGCode, EGKCode
from .ideal_ring import fold, ring_mul, unfold, vec_ring_mat_mul
from .params import BWE, NH, UR, SEED_BYTES, SchemeParams
from .rank_linalg import Matrix, Vector, mat_add, mat_mul, vec_add
from .sampling import (
    DOMAIN_ENCRYPT,
    DOMAIN_KEM,
    DOMAIN_KEYGEN_PUBLIC,
    DOMAIN_KEYGEN_SECRET,
    Expander,
    sample_blockwise,
    sample_generator,
    sample_nh,
    sample_uniform,
    to_matrix,
)

PREFIX_G = b"\x47"
PREFIX_H = b"\x48"
PREFIX_K = b"\x4b"


class DecryptionError(RuntimeError):
    """The decoder rejected the noisy codeword."""

    def __init__(self, outcome: DecodeOutcome):
        where = f" in block {outcome.block}" if outcome.block is not None else ""
        super().__init__(f"decoding failed ({outcome.reason}){where}")
        self.outcome = outcome


class KemReject(Exception):
    """Decapsulation rejected the ciphertext or commitment."""


# ---------------------------------------------------------------------------
# keys and ciphertexts


@dataclass(frozen=True, eq=False)
class PublicKey:
    params: SchemeParams
    g1: tuple[int, ...]
    g2: tuple[int, ...]
    h: tuple  # ring element (BWE, NH) or z x z matrix of tuples (UR)
    s: tuple  # ring element or z x n1 matrix
    seed: bytes | None = None  # generator seed, kept only where it is serialized

    @cached_property
    def code(self) -> EGKCode:
        fld = self.params.field
        p = self.params
        return EGKCode(EGCode(fld, self.g1, p.k1, p.t1), EGCode(fld, self.g2, p.k2, p.t2))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PublicKey):
            return NotImplemented
        return (self.params, self.g1, self.g2, self.h, self.s) == (
            other.params, other.g1, other.g2, other.h, other.s
        )

    def __hash__(self) -> int:
        return hash((self.g1, self.g2, self.h, self.s))


@dataclass(frozen=True)
class SecretKey:
    params: SchemeParams
    seed: bytes

    @cached_property
    def xy(self) -> tuple:
        return _secret_xy(self.params, self.seed)


@dataclass(frozen=True)
class KeyPair:
    pk: PublicKey
    sk: SecretKey


@dataclass(frozen=True)
class Ciphertext:
    params: SchemeParams
    u: tuple  # vector (BWE) or matrix of tuples
    v: tuple


@dataclass(frozen=True)
class KemOutput:
    ciphertext: Ciphertext
    d: bytes
    key: bytes


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(e) for e in x)
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(e) for e in x]
    return x


def _check_seed(seed: bytes) -> None:
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seeds are {SEED_BYTES} bytes")


# ---------------------------------------------------------------------------
# key generation


def _secret_xy(p: SchemeParams, seed1: bytes):
    _check_seed(seed1)
    e1 = Expander(seed1, DOMAIN_KEYGEN_SECRET)
    fld = p.field
    if p.scheme == BWE:
        x, y = sample_blockwise(e1, fld, [p.n, p.n], [p.wx, p.wy], p.blockwise)
        return x, y
    if p.scheme == NH:
        x, y = sample_blockwise(e1, fld, [p.n2, p.n2], [p.wx, p.wy], p.blockwise)
        return x, y
    size = p.z * p.n1
    x, y = sample_blockwise(e1, fld, [size, size], [p.wx, p.wy], p.blockwise)
    return to_matrix(x, p.z, p.n1), to_matrix(y, p.z, p.n1)


def _public_parts(p: SchemeParams, seed2: bytes):
    _check_seed(seed2)
    e2 = Expander(seed2, DOMAIN_KEYGEN_PUBLIC)
    fld = p.field
    g1 = sample_generator(e2, fld, p.n1, p.t1)
    g2 = sample_generator(e2, fld, p.n2, p.t2)
    if p.scheme == UR:
        h = to_matrix(sample_uniform(e2, fld, p.z * p.z), p.z, p.z)
    else:
        h = sample_uniform(e2, fld, p.ring_degree)
    return g1, g2, h


def expand_public(p: SchemeParams, seed2: bytes):
    """``(g1, g2, h)`` as derived from the public seed."""
    return _public_parts(p, seed2)


def keygen(p: SchemeParams, seed1: bytes | None = None, seed2: bytes | None = None) -> KeyPair:
    """Key pair from explicit seeds (fresh platform randomness when omitted)."""
    seed1 = secrets.token_bytes(SEED_BYTES) if seed1 is None else seed1
    seed2 = secrets.token_bytes(SEED_BYTES) if seed2 is None else seed2
    g1, g2, h = _public_parts(p, seed2)
    x, y = _secret_xy(p, seed1)
    fld = p.field
    if p.scheme == UR:
        s = mat_add(x, mat_mul(fld, h, y))
    else:
        s = vec_add(x, ring_mul(p.ring, h, y))
    pk = PublicKey(
        p, tuple(g1), tuple(g2), _freeze(h), _freeze(s), seed2 if p.scheme == BWE else None
    )
    return KeyPair(pk, SecretKey(p, bytes(seed1)))


def bwe_keygen(p: SchemeParams, seed1: bytes, seed2: bytes) -> KeyPair:
    _expect(p, BWE)
    return keygen(p, seed1, seed2)


def nh_keygen(p: SchemeParams, seed1: bytes, seed2: bytes) -> KeyPair:
    _expect(p, NH)
    return keygen(p, seed1, seed2)


def ur_keygen(p: SchemeParams, seed1: bytes, seed2: bytes) -> KeyPair:
    _expect(p, UR)
    return keygen(p, seed1, seed2)


def _expect(p: SchemeParams, scheme: str) -> None:
    if p.scheme != scheme:
        raise ValueError(f"parameters are for {p.scheme}, not {scheme}")


# ---------------------------------------------------------------------------
# encryption


@dataclass(frozen=True)
class EncryptionRandomness:
    """The error terms drawn from ``theta``: ``r1, e, r2`` (vectors or matrices)."""

    r1: list
    e: list
    r2: list


def encryption_randomness(p: SchemeParams, theta: bytes) -> EncryptionRandomness:
    _check_seed(theta)
    ex = Expander(theta, DOMAIN_ENCRYPT)
    fld = p.field
    if p.scheme == BWE:
        r1, e, r2 = sample_blockwise(ex, fld, [p.n] * 3, [p.w1, p.we, p.w2], p.blockwise)
        return EncryptionRandomness(r1, e, r2)
    if p.scheme == NH:
        r1, e, r2 = sample_nh(ex, fld, p.n2, (p.n1, p.n1, p.n1), p.w1, p.w2)
    else:
        r1, e, r2 = sample_nh(ex, fld, p.n2, (p.z, p.n1, p.z), p.w1, p.w2)
    return EncryptionRandomness(r1, e, r2)


def encrypt(pk: PublicKey, msg: Sequence[int], theta: bytes | None = None) -> Ciphertext:
    p = pk.params
    if len(msg) != p.k:
        raise ValueError(f"message must hold {p.k} field elements")
    fld = p.field
    for x in msg:
        fld.check(x)
    theta = secrets.token_bytes(SEED_BYTES) if theta is None else theta
    rnd = encryption_randomness(p, theta)
    mg = pk.code.encode(msg)
    h, s = _thaw(pk.h), _thaw(pk.s)
    if p.scheme == BWE:
        ring = p.ring
        u = vec_add(rnd.r1, ring_mul(ring, h, rnd.r2))
        v = vec_add(vec_add(mg, ring_mul(ring, s, rnd.r2)), rnd.e)
    elif p.scheme == NH:
        ring = p.ring
        u = mat_add(rnd.r1, vec_ring_mat_mul(ring, h, rnd.r2))
        v = mat_add(mat_add(fold(mg, p.n2), vec_ring_mat_mul(ring, s, rnd.r2)), rnd.e)
    else:
        u = mat_add(rnd.r1, mat_mul(fld, rnd.r2, h))
        v = mat_add(mat_add(fold(mg, p.n2), mat_mul(fld, rnd.r2, s)), rnd.e)
    return Ciphertext(p, _freeze(u), _freeze(v))


bwe_encrypt = nh_encrypt = ur_encrypt = encrypt


# ---------------------------------------------------------------------------
# decryption


def noisy_codeword(sk: SecretKey, pk: PublicKey, ct: Ciphertext) -> Vector:
    """The decoder input: ``mG`` plus the error term, as a length-``n`` vector."""
    p = pk.params
    if ct.params != p or sk.params != p:
        raise ValueError("key and ciphertext parameters differ")
    x, y = sk.xy
    u, v = _thaw(ct.u), _thaw(ct.v)
    if p.scheme == BWE:
        return vec_add(v, ring_mul(p.ring, y, u))
    if p.scheme == NH:
        return unfold(mat_add(v, vec_ring_mat_mul(p.ring, y, u)))
    return unfold(mat_add(v, mat_mul(p.field, u, y)))


def decrypt(sk: SecretKey, pk: PublicKey, ct: Ciphertext) -> Vector:
    out = pk.code.decode(noisy_codeword(sk, pk, ct))
    if not out.ok:
        raise DecryptionError(out)
    return out.message


bwe_decrypt = nh_decrypt = ur_decrypt = decrypt


# ---------------------------------------------------------------------------
# KEM


def message_bytes(p: SchemeParams, msg: Sequence[int]) -> bytes:
    fld = p.field
    return b"".join(fld.to_bytes(x) for x in msg)


def message_from_bytes(p: SchemeParams, data: bytes) -> list[int]:
    fld = p.field
    w = fld.nbytes
    if len(data) != p.k * w:
        raise ValueError(f"message must be {p.k * w} bytes")
    return [fld.from_bytes(data[i : i + w]) for i in range(0, len(data), w)]


def hash_g(p: SchemeParams, msg: Sequence[int]) -> bytes:
    return hashlib.sha512(PREFIX_G + message_bytes(p, msg)).digest()[:SEED_BYTES]


def hash_h(p: SchemeParams, msg: Sequence[int]) -> bytes:
    return hashlib.sha512(PREFIX_H + message_bytes(p, msg)).digest()


def hash_k(p: SchemeParams, msg: Sequence[int], ct: Ciphertext) -> bytes:
    from .wire import ciphertext_body

    return hashlib.sha512(PREFIX_K + message_bytes(p, msg) + ciphertext_body(ct)).digest()


def kem_encapsulate(pk: PublicKey, seed: bytes | None = None) -> KemOutput:
    p = pk.params
    seed = secrets.token_bytes(SEED_BYTES) if seed is None else seed
    msg = sample_uniform(Expander(seed, DOMAIN_KEM), p.field, p.k)
    ct = encrypt(pk, msg, hash_g(p, msg))
    return KemOutput(ct, hash_h(p, msg), hash_k(p, msg, ct))


def kem_decapsulate(sk: SecretKey, pk: PublicKey, ct: Ciphertext, d: bytes) -> bytes:
    p = pk.params
    try:
        msg = decrypt(sk, pk, ct)
    except DecryptionError as exc:
        raise KemReject("ciphertext does not decrypt") from exc
    if encrypt(pk, msg, hash_g(p, msg)) != ct:
        raise KemReject("re-encryption mismatch")
    if d != hash_h(p, msg):
        raise KemReject("commitment mismatch")
    return hash_k(p, msg, ct)
