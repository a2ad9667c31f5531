"""Box-counting estimates of the dimension of invariant Cantor sets.

For self-similar sets with separated pieces the box dimension equals the
Hausdorff dimension, so the fitted slope can be compared directly with the
Moran root.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coupled_expanding import PiecewiseExpandingMap, limit_set_cover
from .errors import FitError
from .ifs import MoranRoot
from .intervals import Interval, is_exact

_SNAP = 1e-9


class CoarseGridWarning(UserWarning):
    pass


def _floor(x) -> int:
    if isinstance(x, Fraction):
        return math.floor(x)
    r = round(x)
    return r if abs(x - r) < _SNAP else math.floor(x)


def _ceil(x) -> int:
    if isinstance(x, Fraction):
        return math.ceil(x)
    r = round(x)
    return r if abs(x - r) < _SNAP else math.ceil(x)


def box_count(intervals, epsilon, anchor=None, domain: Interval | None = None) -> int:
    """Number of grid boxes ``[a + k*eps, a + (k+1)*eps)`` met by the cover.

    The grid is anchored at ``anchor`` (default: the domain's left end, or the
    leftmost interval). An interval ending exactly on a box edge does not
    count the box beyond that edge.
    """
    intervals = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not intervals:
        return 0
    if anchor is None:
        anchor = domain.lo if domain is not None else min(iv.lo for iv in intervals)
    if domain is not None and epsilon > domain.length:
        warnings.warn(f"epsilon {epsilon} exceeds the domain length {domain.length}", CoarseGridWarning, stacklevel=2)
        return 1
    boxes = set()
    for iv in intervals:
        first = _floor((iv.lo - anchor) / epsilon)
        last = max(first, _ceil((iv.hi - anchor) / epsilon) - 1)
        boxes.update(range(first, last + 1))
    return len(boxes)


@dataclass
class DimensionEstimate:
    slope: float
    intercept: float
    scales: list[tuple[float, int]]
    residual: float

    def rows(self) -> list[tuple[float, int]]:
        return list(self.scales)


def fit_loglog(scales) -> DimensionEstimate:
    """Least-squares line through ``(log 1/eps, log N)``."""
    if len(scales) < 4:
        raise FitError(f"need at least 4 scales, got {len(scales)}")
    x = np.array([-math.log(float(eps)) for eps, _ in scales])
    y = np.array([math.log(n) for _, n in scales])
    if np.ptp(x) == 0:
        raise FitError("all scales are equal")
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return DimensionEstimate(float(slope), float(intercept), [(float(e), int(n)) for e, n in scales], residual)


def estimate_dimension(f: PiecewiseExpandingMap, depths, budget: int | None = None) -> DimensionEstimate:
    """Box-count the depth-``n`` covers at ``eps = diam(D) / (min lambda)**n`` and fit."""
    lam_min = min(f.lambdas)
    diam = f.domain.length
    scales = []
    for n in depths:
        cover = [b.interval for b in limit_set_cover(f, n, budget=budget)]
        eps = diam / lam_min**n
        if not is_exact(eps):
            eps = float(eps)
        scales.append((eps, box_count(cover, eps, anchor=f.domain.lo)))
    return fit_loglog(scales)


@dataclass
class MoranComparison:
    slope: float
    moran_root: float
    gap: float
    tol: float
    passed: bool
    ly_dimension: float
    estimated_ly_dimension: float

    def as_dict(self) -> dict:
        return {
            "slope": self.slope,
            "moran_root": self.moran_root,
            "gap": self.gap,
            "tol": self.tol,
            "ly_dimension": self.ly_dimension,
            "estimated_ly_dimension": self.estimated_ly_dimension,
            "verdict": "pass" if self.passed else "fail",
        }


def compare_to_moran(est: DimensionEstimate, root: MoranRoot, tol: float) -> MoranComparison:
    """Check ``|slope - p| <= tol`` and report the Li-Yorke pair dimension ``2p``."""
    gap = est.slope - root.p
    return MoranComparison(
        slope=est.slope,
        moran_root=root.p,
        gap=gap,
        tol=tol,
        passed=abs(gap) <= tol,
        ly_dimension=root.ly_dimension,
        estimated_ly_dimension=2 * est.slope,
    )
