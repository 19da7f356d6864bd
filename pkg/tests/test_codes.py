import random

import pytest

from oracles import fmat_vec, gf2_rank, lin_eval
from rankcrypt.codes import (
    CASE_1,
    CASE_2,
    EGCode,
    EGKCode,
    RegimeError,
    canonicalize_generator,
    eg_decoding_radius,
    egk_decoding_radius,
)
from rankcrypt.galois import get_field
from rankcrypt.rank_linalg import RankError, matrix_rank, rank_weight
from rankcrypt.sampling import Expander, sample_generator, sample_weight_vector


def eg(fld, e, n, k, t):
    return EGCode(fld, tuple(sample_generator(e, fld, n, t)), k, t)


@pytest.fixture(scope="module")
def bwe_row1():
    """Component codes of the first BWE row: EG_3 (n=10, t=3) and EG_5 (n=59, t=53)."""
    fld = get_field(53)
    e = Expander(bytes(40), 0x20)
    return EGKCode(eg(fld, e, 10, 3, 3), eg(fld, e, 59, 5, 53))


# -- EG codes -------------------------------------------------------------------


def test_eg_generator_matrix():
    fld = get_field(7)
    e = Expander(bytes(40), 0x21)
    for k in range(1, 6):
        c = eg(fld, e, 9, k, 6)
        assert c.generator_matrix[0] == list(c.g)
        assert matrix_rank(fld, c.generator_matrix) == k
        rng = random.Random(k)
        msg = [fld.random(rng) for _ in range(k)]
        expect = [lin_eval(msg, x, fld.modulus) for x in c.g]
        assert c.encode(msg) == expect == fmat_vec(msg, c.generator_matrix, fld.modulus)
    c = eg(fld, e, 9, 1, 6)
    assert c.encode([0]) == [0] * 9
    assert c.encode([3]) == [fld.mul(3, x) for x in c.g]


def test_eg_rejects_bad_generator():
    fld = get_field(5)
    with pytest.raises(ValueError):
        EGCode(fld, (1, 2, 3), 4, 3)
    with pytest.raises(RankError):
        EGCode(fld, (1, 1, 2), 1, 3)


def test_canonicalize_examples():
    fld = get_field(5)
    a, b = 0b00110, 0b10001
    g_prime, cols = canonicalize_generator([a, a, b], 2)
    assert g_prime == [a, b, 0]
    g_prime, cols = canonicalize_generator([a, b, 0b00001], 3)
    assert g_prime == [a, b, 0b00001]
    assert gf2_rank(cols, 3) == 3
    e = Expander(bytes(40), 0x22)
    for _ in range(50):
        g = sample_weight_vector(e, fld, 8, 3)
        gp, cols = canonicalize_generator(g, 3)
        assert rank_weight(gp) == 3 and gp[3:] == [0] * 5
        assert gf2_rank(cols, 8) == 8


def test_radius_values():
    fld = get_field(85)
    e = Expander(bytes(40), 0x23)
    assert eg_decoding_radius(eg(fld, e, 86, 3, 85)) == 41
    assert eg_decoding_radius(eg(get_field(53), e, 59, 5, 53)) == 24
    assert eg_decoding_radius(eg(get_field(5), e, 6, 5, 5)) == 0


def test_eg_decode_at_radius(bwe_row1):
    c2 = bwe_row1.c2
    fld = c2.field
    e = Expander(bytes([7] * 40), 0x24)
    rng = random.Random(1)
    for w in (0, 1, 12, 24):
        for _ in range(5):
            msg = [fld.random(rng) for _ in range(5)]
            err = sample_weight_vector(e, fld, 59, w)
            y = [a ^ b for a, b in zip(c2.encode(msg), err)]
            assert c2.decode(y).message == msg


def test_eg_decode_random_words_fail_cleanly(bwe_row1):
    c2 = bwe_row1.c2
    fld = c2.field
    rng = random.Random(2)
    for _ in range(20):
        out = c2.decode([fld.random(rng) for _ in range(59)])
        assert not out.ok and out.reason


def test_eg_decode_beyond_radius_never_misreports(bwe_row1):
    c2 = bwe_row1.c2
    fld = c2.field
    e = Expander(bytes([8] * 40), 0x25)
    rng = random.Random(3)
    for _ in range(10):
        msg = [fld.random(rng) for _ in range(5)]
        err = sample_weight_vector(e, fld, 59, 30)
        y = [a ^ b for a, b in zip(c2.encode(msg), err)]
        out = c2.decode(y)
        if out.ok:
            # a different codeword within the radius is a legitimate answer
            diff = [a ^ b for a, b in zip(y, c2.encode(out.message))]
            assert rank_weight(diff) <= c2.radius
        else:
            assert out.reason is not None


# -- EGK codes ------------------------------------------------------------------


def test_egk_generator_matrix():
    fld = get_field(6)
    e = Expander(bytes(40), 0x26)
    c = EGKCode(eg(fld, e, 3, 2, 3), eg(fld, e, 4, 2, 4))
    g = c.generator_matrix
    assert matrix_rank(fld, g) == 4
    g1, g2 = c.c1.generator_matrix, c.c2.generator_matrix
    for i in range(2):
        for j in range(3):
            block = [row[4 * j : 4 * j + 4] for row in g[2 * i : 2 * i + 2]]
            assert block == [[fld.mul(g1[i][j], x) for x in row] for row in g2]
    rng = random.Random(4)
    msg = [fld.random(rng) for _ in range(4)]
    assert c.encode(msg) == fmat_vec(msg, g, fld.modulus)
    single = EGKCode(eg(fld, e, 2, 1, 2), eg(fld, e, 3, 1, 3))
    assert single.generator_matrix == [[fld.mul(a, b) for a in single.c1.g for b in single.c2.g]]


def test_egk_regimes():
    fld = get_field(53)
    e = Expander(bytes(40), 0x27)
    assert EGKCode(eg(fld, e, 10, 3, 3), eg(fld, e, 59, 5, 53)).regime == CASE_1
    fld5 = get_field(5)
    toy = EGKCode(eg(fld5, e, 2, 1, 1), eg(fld5, e, 6, 1, 5))
    assert toy.regime == CASE_2 and toy.radius == 2
    odd = EGKCode(eg(fld, e, 10, 2, 3), eg(fld, e, 59, 5, 53))
    assert odd.regime is None
    with pytest.raises(RegimeError):
        egk_decoding_radius(odd)


def test_egk_decode_table8(bwe_row1):
    fld = bwe_row1.field
    assert bwe_row1.radius == 24
    e = Expander(bytes([9] * 40), 0x28)
    rng = random.Random(5)
    assert bwe_row1.decode(bwe_row1.encode([1] * 15)).message == [1] * 15
    for _ in range(5):
        msg = [fld.random(rng) for _ in range(15)]
        err = sample_weight_vector(e, fld, 590, 21)
        y = [a ^ b for a, b in zip(bwe_row1.encode(msg), err)]
        assert bwe_row1.decode(y).message == msg


def test_egk_decode_toy_second_regime():
    fld = get_field(5)
    e = Expander(bytes([10] * 40), 0x29)
    rng = random.Random(6)
    for _ in range(30):
        code = EGKCode(eg(fld, e, 2, 1, 1), eg(fld, e, 6, 1, 5))
        msg = [fld.random(rng)]
        err = sample_weight_vector(e, fld, 12, 2)
        y = [a ^ b for a, b in zip(code.encode(msg), err)]
        assert code.decode(y).message == msg
