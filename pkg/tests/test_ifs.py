import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lydim import (
    ConsistencyError,
    DomainError,
    Interval,
    Similarity,
    SimilarityIFS,
    bernoulli_cylinder_mass,
    code_point,
    cylinder_weight,
    moran_root,
    moran_root_star,
    phi_inverse,
    SymbolWord,
    validate_ifs,
)

# frozen from an independent high-precision root finder
STAR_2_4_4 = 0.761813543101246053
STAR_20_9_2 = 0.625700020706132772
HALF_QUARTER = 0.694241913630617302
LOG2_LOG3 = math.log(2) / math.log(3)


def test_moran_closed_forms():
    assert abs(moran_root([F(1, 3), F(1, 3)]).p - LOG2_LOG3) < 1e-10
    assert abs(moran_root([0.5, 0.5]).p - 1) < 1e-12
    assert abs(moran_root([0.5] * 4).p - 2) < 1e-12
    assert abs(moran_root_star([3, 3, 3]).p - LOG2_LOG3) < 1e-10


def test_moran_golden_values():
    r = moran_root([0.5, 0.25])
    assert abs(r.p - HALF_QUARTER) < 1e-11
    assert 0.5**r.p == pytest.approx((5**0.5 - 1) / 2, abs=1e-11)
    assert abs(moran_root_star([2, 4, 4]).p - STAR_2_4_4) < 1e-11
    assert abs(moran_root_star([F(20, 9), 2]).p - STAR_20_9_2) < 1e-11
    assert moran_root_star([F(20, 9), 2]).ly_dimension == pytest.approx(2 * STAR_20_9_2)


@pytest.mark.parametrize("bad", [[0.5], [0.5, 1.0], [0.0, 0.5], [-0.2, 0.3]])
def test_moran_domain(bad):
    with pytest.raises(DomainError):
        moran_root(bad)


def test_moran_star_domain():
    with pytest.raises(DomainError):
        moran_root_star([1, 3])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.01, 0.6), min_size=2, max_size=6))
def test_moran_residual_and_bracket(ratios):
    r = moran_root(ratios)
    assert abs(math.fsum(c**r.p for c in ratios) - 1) <= 1e-9
    assert r.bracket[0] <= r.p <= r.bracket[1]
    # adding a map can only raise the dimension
    assert moran_root(ratios + [0.01]).p >= r.p - 1e-12


def test_similarity_and_json():
    s = Similarity(F(1, 3), F(2, 3))
    assert s(1) == 1 and s.inverse(F(2, 3)) == 0
    assert Similarity(F(1, 2), 1, reflect=True).image(Interval(0, 1)) == Interval(F(1, 2), 1)
    ifs = SimilarityIFS.middle_thirds()
    assert SimilarityIFS.from_dict(ifs.to_dict()) == ifs
    assert validate_ifs(ifs).valid and validate_ifs(ifs).gap == F(1, 3)
    bad = SimilarityIFS((Similarity(F(1, 2)), Similarity(F(1, 2), F(1, 4))), Interval(0, 1))
    assert not validate_ifs(bad).valid


def test_code_point_nested_order():
    ifs = SimilarityIFS.middle_thirds()
    assert code_point(ifs, (1, 2)) == Interval(F(2, 9), F(1, 3))
    assert code_point(ifs, (2, 1)) == Interval(F(2, 3), F(7, 9))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=30))
def test_code_point_diameter_and_nesting(w):
    ifs = SimilarityIFS.middle_thirds()
    iv = code_point(ifs, w)
    assert iv.length == cylinder_weight(w, ifs.ratios).value * ifs.seed.length
    parent = code_point(ifs, w[:-1]) if len(w) > 1 else ifs.seed
    assert parent.contains(iv)


def test_cylinder_weight_modes():
    ratios = (F(1, 3), F(1, 5), F(1, 7))
    assert cylinder_weight((1, 2), ratios).value == F(1, 15)
    assert cylinder_weight((2, 1), ratios, "primed").value == F(3, 5) * F(1, 3)
    assert isinstance(cylinder_weight((1,), (0.3, 0.2)).value, float)
    with pytest.raises(ValueError):
        cylinder_weight((1,), ratios, "other")


def test_primed_weight_identity_random():
    rng = random.Random(7)
    for _ in range(300):
        m = rng.choice([2, 3, 5])
        ratios = tuple(F(1, rng.randint(2, 9)) for _ in range(m))
        a = tuple(rng.randint(1, m) for _ in range(rng.randint(1, 51)))
        lhs = cylinder_weight(phi_inverse(SymbolWord(a, m)).symbols, ratios, "primed").value
        assert lhs == cylinder_weight(a, ratios).value


def test_bernoulli_mass():
    ratios = (F(1, 3), F(1, 3))
    D = moran_root(ratios).p
    assert bernoulli_cylinder_mass((1, 2, 1), ratios, D).value == pytest.approx(1 / 8)
    with pytest.raises(ConsistencyError):
        bernoulli_cylinder_mass((1,), ratios, 0.5)
