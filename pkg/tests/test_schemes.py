import random

import pytest

from rankcrypt.galois import get_field
from rankcrypt.ideal_ring import fold, ring_mul, unfold, vec_ring_mat_mul
from rankcrypt.params import BWE, NH, get_params
from rankcrypt.rank_linalg import mat_add, mat_mul, rank_weight, vec_add
from rankcrypt.schemes import (
    KemReject,
    _thaw,
    decrypt,
    encrypt,
    encryption_randomness,
    kem_decapsulate,
    kem_encapsulate,
    keygen,
    noisy_codeword,
)
from rankcrypt import wire

ROWS = list(range(1, 10))
S1, S2, TH = bytes([1] * 40), bytes([2] * 40), bytes([3] * 40)


def rand_msg(p, rng):
    return [p.field.random(rng) for _ in range(p.k)]


@pytest.fixture(scope="module", params=ROWS)
def keys(request):
    p = get_params(request.param)
    return p, keygen(p, S1, S2)


def test_keygen_deterministic(keys):
    p, kp = keys
    again = keygen(p, S1, S2)
    assert again.pk == kp.pk
    assert wire.serialize_pk(again.pk) == wire.serialize_pk(kp.pk)
    assert keygen(p, S1, bytes(40)).pk != kp.pk


def test_public_key_relation(keys):
    p, kp = keys
    x, y = kp.sk.xy
    h, s = _thaw(kp.pk.h), _thaw(kp.pk.s)
    if p.scheme == "MultiUR":
        assert mat_add(s, mat_mul(p.field, h, y)) == x
    else:
        assert vec_add(s, ring_mul(p.ring, h, y)) == x
    assert rank_weight(unfold(x) if isinstance(x[0], list) else x) == p.wx
    assert rank_weight(unfold(y) if isinstance(y[0], list) else y) == p.wy


def test_round_trip_and_error_weight(keys):
    p, kp = keys
    rng = random.Random(p.row_id)
    for i in range(3):
        msg = rand_msg(p, rng) if i else [0] * p.k
        ct = encrypt(kp.pk, msg, bytes([i] * 40))
        assert decrypt(kp.sk, kp.pk, ct) == msg
        err = vec_add(noisy_codeword(kp.sk, kp.pk, ct), kp.pk.code.encode(msg))
        assert rank_weight(err) <= p.r


def test_encrypt_deterministic_and_error_recomputed(keys):
    p, kp = keys
    rng = random.Random(50 + p.row_id)
    msg = rand_msg(p, rng)
    ct = encrypt(kp.pk, msg, TH)
    assert encrypt(kp.pk, msg, TH) == ct
    assert encrypt(kp.pk, msg, bytes(40)) != ct
    rnd = encryption_randomness(p, TH)
    mg = kp.pk.code.encode(msg)
    s = _thaw(kp.pk.s)
    v = _thaw(ct.v)
    if p.scheme == BWE:
        e = vec_add(vec_add(v, mg), ring_mul(p.ring, s, rnd.r2))
        assert rank_weight(e) == p.we
    elif p.scheme == NH:
        e = mat_add(mat_add(v, fold(mg, p.n2)), vec_ring_mat_mul(p.ring, s, rnd.r2))
        assert e == rnd.e
    else:
        e = mat_add(mat_add(v, fold(mg, p.n2)), mat_mul(p.field, rnd.r2, s))
        assert e == rnd.e


def test_unstructured_correctness_identity():
    p = get_params(7)
    kp = keygen(p, S1, S2)
    msg = rand_msg(p, random.Random(1))
    ct = encrypt(kp.pk, msg, TH)
    rnd = encryption_randomness(p, TH)
    x, y = kp.sk.xy
    fld = p.field
    u, v = _thaw(ct.u), _thaw(ct.v)
    lhs = mat_add(v, mat_mul(fld, u, y))
    rhs = mat_add(
        mat_add(fold(kp.pk.code.encode(msg), p.n2), mat_mul(fld, rnd.r2, x)),
        mat_add(mat_mul(fld, rnd.r1, y), rnd.e),
    )
    assert lhs == rhs


def test_kem(keys):
    p, kp = keys
    for i in range(2):
        out = kem_encapsulate(kp.pk, bytes([i + 1] * 40))
        assert kem_decapsulate(kp.sk, kp.pk, out.ciphertext, out.d) == out.key
        bad_d = bytes([out.d[0] ^ 1]) + out.d[1:]
        with pytest.raises(KemReject):
            kem_decapsulate(kp.sk, kp.pk, out.ciphertext, bad_d)
        raw = bytearray(wire.serialize_ct(out.ciphertext))
        raw[wire.HEADER_BYTES] ^= 0x01
        tampered = wire.deserialize_ct(bytes(raw))
        with pytest.raises(KemReject):
            kem_decapsulate(kp.sk, kp.pk, tampered, out.d)


def test_message_validation():
    p = get_params(1)
    kp = keygen(p, S1, S2)
    with pytest.raises(ValueError):
        encrypt(kp.pk, [0] * (p.k - 1), TH)
    with pytest.raises(ValueError):
        encrypt(kp.pk, [1 << p.m] + [0] * (p.k - 1), TH)
    assert get_field(53) is p.field
