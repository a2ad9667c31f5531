import math
import warnings
from fractions import Fraction as F

import pytest

from conftest import middle_thirds_map, star_map, two_four_map
from lydim import (
    DimensionEstimate,
    Interval,
    box_count,
    compare_to_moran,
    estimate_dimension,
    limit_set_cover,
    moran_root,
    moran_root_star,
)
from lydim.dimension import CoarseGridWarning, fit_loglog
from lydim.errors import FitError

LOG2_LOG3 = math.log(2) / math.log(3)


def test_box_count_examples():
    f = middle_thirds_map()
    cover = [b.interval for b in limit_set_cover(f, 5)]
    assert box_count(cover, F(1, 243), anchor=0) == 32
    assert box_count(cover, 1 / 243, anchor=0) == 32
    assert box_count([], 0.1) == 0
    with pytest.warns(CoarseGridWarning):
        assert box_count(cover, 2, domain=Interval(0, 1)) == 1


def test_box_count_monotone():
    cover = [b.interval for b in limit_set_cover(two_four_map(), 8)]
    counts = [box_count(cover, F(1, 2**k), anchor=0) for k in range(1, 12)]
    assert counts == sorted(counts)


def test_fit_needs_four_scales():
    with pytest.raises(FitError):
        fit_loglog([(0.1, 2), (0.01, 4), (0.001, 8)])
    with pytest.raises(FitError):
        fit_loglog([(0.1, 2)] * 4)


def test_middle_thirds_slope():
    est = estimate_dimension(middle_thirds_map(), range(4, 10))
    assert abs(est.slope - LOG2_LOG3) < 0.02
    assert est.residual < 1e-9
    assert estimate_dimension(middle_thirds_map(), range(4, 10)) == est


def test_two_four_and_star_slopes():
    est = estimate_dimension(two_four_map(), range(4, 10))
    assert abs(est.slope - moran_root([0.5, 0.25]).p) < 0.05
    est = estimate_dimension(star_map(), range(4, 10))
    assert abs(est.slope - moran_root_star([F(20, 9), 2]).p) < 0.05


def test_compare_verdicts():
    est = DimensionEstimate(0.6309, 0.0, [], 0.0)
    cmp = compare_to_moran(est, moran_root([F(1, 3), F(1, 3)]), 0.02)
    assert cmp.passed and cmp.ly_dimension == pytest.approx(2 * LOG2_LOG3)
    assert cmp.as_dict()["verdict"] == "pass"
    wrong = compare_to_moran(est, moran_root([0.5, 0.5]), 0.02)
    assert not wrong.passed and wrong.gap < 0
    star = moran_root_star([3, 3, 3])
    assert star.ly_dimension == pytest.approx(2 * LOG2_LOG3, abs=1e-10)
