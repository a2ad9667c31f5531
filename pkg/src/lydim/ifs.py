"""Self-similar sets on the line: similarity systems, coding, weights, Moran roots."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

from .errors import ConsistencyError, ConvergenceError, DomainError, EscapeError
from .intervals import Interval, as_number, exact_int


@dataclass(frozen=True)
class Similarity:
    """``S(x) = -ratio*x + offset`` if ``reflect`` else ``ratio*x + offset``."""

    ratio: object
    offset: object = 0
    reflect: bool = False

    def __post_init__(self):
        object.__setattr__(self, "offset", exact_int(self.offset))
        if not 0 < self.ratio < 1:
            raise DomainError(f"contraction ratio {self.ratio} outside (0, 1)")

    @property
    def slope(self):
        return -self.ratio if self.reflect else self.ratio

    def __call__(self, x):
        return self.slope * x + self.offset

    def image(self, interval: Interval) -> Interval:
        return interval.affine(self.slope, self.offset)

    def inverse(self, y):
        return (y - self.offset) / self.slope


@dataclass(frozen=True)
class SimilarityIFS:
    maps: tuple[Similarity, ...]
    seed: Interval
    ambient_dim: int = field(default=1)

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.ambient_dim != 1:
            raise NotImplementedError("only similarities of the line are supported")

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> tuple:
        return tuple(S.ratio for S in self.maps)

    def images(self) -> list[Interval]:
        return [S.image(self.seed) for S in self.maps]

    def gap(self):
        imgs = self.images()
        return min(imgs[i].distance(imgs[j]) for i in range(len(imgs)) for j in range(i + 1, len(imgs)))

    def expanding_map(self, x):
        """The dynamics on the attractor: apply ``S_i^{-1}`` on ``S_i(K)``."""
        for S, img in zip(self.maps, self.images()):
            if img.contains_point(x, slack=0):
                return S.inverse(x)
        raise EscapeError(0, x)

    @classmethod
    def from_dict(cls, data: dict) -> SimilarityIFS:
        maps = tuple(
            Similarity(as_number(d["ratio"]), as_number(d.get("offset", 0)), bool(d.get("reflect", False)))
            for d in data["maps"]
        )
        lo, hi = data["seed"]
        return cls(maps, Interval(as_number(lo), as_number(hi)))

    def to_dict(self) -> dict:
        return {
            "seed": [_jsonable(self.seed.lo), _jsonable(self.seed.hi)],
            "maps": [{"ratio": _jsonable(S.ratio), "offset": _jsonable(S.offset), "reflect": S.reflect} for S in self.maps],
        }

    @classmethod
    def middle_thirds(cls) -> SimilarityIFS:
        third = Fraction(1, 3)
        return cls((Similarity(third, 0), Similarity(third, 2 * third)), Interval(Fraction(0), Fraction(1)))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


@dataclass
class IFSReport:
    valid: bool
    failures: list[str]
    gap: object
    ratios: tuple


def validate_ifs(ifs: SimilarityIFS) -> IFSReport:
    failures = []
    if ifs.m < 2:
        failures.append(f"need at least 2 maps, got {ifs.m}")
    imgs = ifs.images()
    for i, img in enumerate(imgs, start=1):
        if not ifs.seed.contains(img, slack=0):
            failures.append(f"S{i}(K) = [{img.lo}, {img.hi}] is not inside K")
    gap = None
    if ifs.m >= 2:
        gap = ifs.gap()
        for i in range(len(imgs)):
            for j in range(i + 1, len(imgs)):
                if not imgs[i].distance(imgs[j]) > 0:
                    failures.append(f"S{i + 1}(K) and S{j + 1}(K) are not disjoint")
    return IFSReport(not failures, failures, gap, ifs.ratios)


def code_point(ifs: SimilarityIFS, w) -> Interval:
    """``S_{w_0} o S_{w_1} o ... o S_{w_k}(K)``; shrinks to the coded point as ``w`` grows."""
    interval = ifs.seed
    for a in reversed(tuple(w)):
        interval = ifs.maps[a - 1].image(interval)
    return interval


@dataclass(frozen=True)
class MoranRoot:
    p: float
    residual: float
    bracket: tuple[float, float]
    iterations: int

    @property
    def ly_dimension(self) -> float:
        """Dimension of the Li-Yorke pair set, twice the root."""
        return 2 * self.p


def _moran_sum(logs, p):
    return math.fsum(math.exp(p * lc) for lc in logs) - 1.0


def moran_root(ratios: Sequence, tol: float = 1e-12, max_iter: int = 200) -> MoranRoot:
    """Unique ``p >= 0`` with ``sum(c_i ** p) == 1``, by bisection.

    The left side decreases strictly in ``p``; the bracket
    ``[0, log m / log(1/max c)]`` always contains the root.
    """
    ratios = [float(c) for c in ratios]
    if len(ratios) < 2:
        raise DomainError("need at least two ratios")
    for c in ratios:
        if not 0 < c < 1:
            raise DomainError(f"ratio {c} outside (0, 1)")
    logs = [math.log(c) for c in ratios]
    lo, hi = 0.0, math.log(len(ratios)) / -math.log(max(ratios))
    bracket = (lo, hi)
    p, g = hi, _moran_sum(logs, hi)
    for it in range(1, max_iter + 1):
        p = (lo + hi) / 2
        g = _moran_sum(logs, p)
        if g > 0:
            lo = p
        elif g < 0:
            hi = p
        else:
            break
        if hi - lo <= tol and abs(g) <= tol:
            break
    else:
        if abs(g) > tol:
            raise ConvergenceError(f"bisection stalled at p={p} with residual {g}", last=p)
    return MoranRoot(p, g, bracket, it)


def moran_root_star(lambdas: Sequence, tol: float = 1e-12, max_iter: int = 200) -> MoranRoot:
    """Root of ``(1/l1)**p + sum_{i>=2} (1/(l1*li))**p == 1`` (star-matrix maps)."""
    lambdas = list(lambdas)
    if len(lambdas) < 2:
        raise DomainError("need at least two expansion rates")
    for lam in lambdas:
        if not lam > 1:
            raise DomainError(f"expansion rate {lam} must exceed 1")
    return moran_root(star_ratios(lambdas), tol=tol, max_iter=max_iter)


def star_ratios(lambdas: Sequence) -> tuple:
    l1 = lambdas[0]
    return (1 / l1,) + tuple(1 / (l1 * lam) for lam in lambdas[1:])


class Weight(NamedTuple):
    """A positive product kept in both log and linear form."""

    log: float
    value: object


def primed_ratios(ratios: Sequence) -> tuple:
    c1 = ratios[0]
    return (c1,) + tuple(c / c1 for c in ratios[1:])


def _product_weight(symbols, coeffs) -> Weight:
    log = math.fsum(math.log(coeffs[a - 1]) for a in symbols)
    if all(isinstance(c, Rational) for c in coeffs):
        value = Fraction(1)
        for a in symbols:
            value *= coeffs[a - 1]
        return Weight(log, value)
    return Weight(log, math.exp(log))


def cylinder_weight(w, ratios: Sequence, mode: str = "plain") -> Weight:
    """Product of the ratios along ``w``; ``mode="primed"`` uses ``c1, c_i/c1, ...``.

    Exact ``Fraction`` products are returned when every ratio is rational.
    """
    ratios = tuple(ratios)
    if mode == "plain":
        coeffs = ratios
    elif mode == "primed":
        coeffs = primed_ratios(ratios)
    else:
        raise ValueError(f"unknown weight mode {mode!r}")
    return _product_weight(tuple(w), coeffs)


def bernoulli_cylinder_mass(w, ratios: Sequence, D: float, tol: float = 1e-9) -> Weight:
    """Mass of the cylinder ``[w]`` under the Bernoulli measure with weights ``c_i ** D``."""
    total = math.fsum(float(c) ** D for c in ratios)
    if abs(total - 1) > tol:
        raise ConsistencyError(f"probability vector sums to {total!r}, not 1; D is not the Moran root")
    log = D * math.fsum(math.log(float(ratios[a - 1])) for a in w)
    return Weight(log, math.exp(log))

