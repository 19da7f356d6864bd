import pytest

from rankcrypt.params import REGISTRY, ParameterError, SchemeParams, get_params, load_params_file

REFERENCE_SIZES = {
    1: (3949, 7818), 2: (8237, 16394), 3: (16002, 31924),
    4: (3679, 10966), 5: (4816, 14406), 6: (6792, 37004),
    7: (2138, 8224), 8: (2426, 9419), 9: (3831, 15269),
}


@pytest.mark.parametrize("row", sorted(REFERENCE_SIZES))
def test_reference_sizes(row):
    p = get_params(row)
    assert (p.pk_bytes, p.ct_bytes) == REFERENCE_SIZES[row]


def test_bwe_size_arithmetic():
    p = get_params(1)
    assert p.pk_bytes == -(-53 * 590 // 8) + 40
    assert p.n == 590 and p.k == 15


@pytest.mark.parametrize("row", sorted(REFERENCE_SIZES))
def test_rows_decode_within_radius(row):
    p = get_params(row)
    assert p.regime == "case-1"
    assert p.radius == (p.t2 - p.k2) // 2
    assert p.error_bound <= p.radius
    assert p.r == p.error_bound


def test_radius_examples():
    assert get_params(1).radius == 24 and get_params(1).r == 21
    assert get_params(4).radius == 41 and get_params(4).r == 28


def test_validation():
    base = get_params(1).as_mapping()
    with pytest.raises(ParameterError):
        SchemeParams.from_mapping({**base, "t2": 52})
    with pytest.raises(ParameterError):
        SchemeParams.from_mapping({**base, "wx": 9})
    with pytest.raises(ParameterError):
        SchemeParams.from_mapping({**base, "bogus": 1})
    with pytest.raises(ParameterError):
        SchemeParams.from_mapping({**base, "scheme": "nope"})
    with pytest.raises(ParameterError):
        get_params(10)


def test_load_params_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("# override one field\nrow = 7\nlevel = 0\n")
    p = load_params_file(str(f))
    assert p.scheme == "MultiUR" and p.level == 0 and p.z == 3
    g = tmp_path / "q.txt"
    g.write_text("\n".join(f"{k}={v}" for k, v in REGISTRY[4].as_mapping().items()))
    assert load_params_file(str(g)) == REGISTRY[4]
    bad = tmp_path / "r.txt"
    bad.write_text("row 7\n")
    with pytest.raises(ParameterError):
        load_params_file(str(bad))
