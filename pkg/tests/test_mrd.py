import pytest

from oracles import fmul, gf2_rank
from rankcrypt import mrd
from rankcrypt.codes import CASE_1, CASE_2
from rankcrypt.galois import GF2m
from rankcrypt.rank_linalg import InstanceTooLargeError, min_rank_distance_bruteforce
from rankcrypt.sampling import Expander

SEED = bytes(40)


def test_shape_regimes_and_bounds():
    gk = mrd.Shape(4, 2, 2, 2, 4, 2, 4)
    assert gk.regime == CASE_1 and gk.bounds == (3, 3) and gk.kind == "GK"
    egk = mrd.Shape(4, 3, 2, 2, 5, 2, 4)
    assert egk.regime == CASE_1 and egk.bounds == (3, 3) and egk.kind == "EGK"
    small = mrd.Shape(4, 2, 1, 2, 2, 1, 2)
    assert small.regime == CASE_2 and small.bounds == (2, 4)
    neither = mrd.Shape(5, 3, 2, 3, 3, 1, 3)
    assert neither.regime is None and neither.bounds is None
    assert "EGK m=4" in egk.describe()


@pytest.mark.parametrize("args", [(4, 2, 3, 2, 4, 2, 4), (4, 2, 2, 3, 4, 2, 4), (4, 2, 2, 2, 4, 2, 5), (4, 2, 0, 2, 4, 2, 4)])
def test_shape_validation(args):
    with pytest.raises(ValueError):
        mrd.Shape(*args)


def test_default_grid_layout():
    grid = mrd.default_grid()
    case1 = [s for s in grid if s.regime == CASE_1]
    assert sorted((s.m, s.kind) for s in case1) == [(m, k) for m in (3, 4, 5) for k in ("EGK", "GK")]
    assert all(s.bounds[0] == s.t2 - s.k2 + 1 for s in case1)
    assert [s for s in grid if s.regime == CASE_2] == [mrd.Shape(4, 2, 1, 2, 2, 1, 2)]


def support_product_dim(fld, g1, g2):
    prods = [fmul(a, b, fld.modulus) for a in g1 for b in g2]
    return gf2_rank(prods, fld.m)


def test_case_2_distance_is_dimension_of_support_product():
    # with k1 = k2 = 1 the code is a single line spanned by g1 (x) g2
    shape = mrd.Shape(4, 2, 1, 2, 2, 1, 2)
    fld = GF2m(4)
    e = Expander(b"\x07" * 40, mrd.DOMAIN_MRD)
    for _ in range(40):
        code = mrd.sample_code(e, fld, shape)
        d = min_rank_distance_bruteforce(fld, code.generator_matrix)
        assert d == support_product_dim(fld, code.c1.g, code.c2.g)


def test_small_run_conforms():
    grid = [mrd.Shape(3, 2, 2, 2, 3, 2, 3), mrd.Shape(3, 3, 2, 2, 4, 2, 3), mrd.Shape(4, 2, 1, 2, 2, 1, 2)]
    results = mrd.run_grid(SEED, 8, grid)
    assert [len(r.distances) for r in results] == [8, 8, 8]
    for r in results:
        assert not r.violations
    assert results[0].histogram() == {2: 8}
    assert results[0].attains_low and results[0].attains_high


def test_run_is_deterministic():
    grid = [mrd.Shape(4, 2, 1, 2, 2, 1, 2)]
    a = mrd.run_grid(b"\x01" * 40, 10, grid)[0].distances
    b = mrd.run_grid(b"\x01" * 40, 10, grid)[0].distances
    assert a == b


def test_zero_trials():
    results = mrd.run_grid(SEED, 0)
    assert len(results) == len(mrd.default_grid())
    for r in results:
        assert r.distances == [] and r.histogram() == {} and not r.violations
        assert not r.attains_low and not r.attains_high


def test_violation_bookkeeping():
    r = mrd.ShapeResult(mrd.Shape(4, 2, 1, 2, 2, 1, 2), [2, 3, 5, 1])
    assert r.violations == [(2, 5), (3, 1)]
    assert r.attains_low and not r.attains_high


def test_too_large_instance_is_refused():
    with pytest.raises(InstanceTooLargeError):
        mrd.run_grid(SEED, 1, [mrd.Shape(5, 3, 3, 3, 5, 3, 5)])
