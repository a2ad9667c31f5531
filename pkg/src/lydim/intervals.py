"""Closed intervals on the line with exact or floating endpoints.

Endpoints may be ``Fraction`` or ``float``. When every number involved is
rational the arithmetic stays exact; otherwise comparisons that must not fail
to rounding use ``FLOAT_SLACK``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

FLOAT_SLACK = 1e-9


def is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def slack_for(*values):
    return 0 if is_exact(*values) else FLOAT_SLACK


def exact_int(x):
    """Promote plain ints to ``Fraction`` so later divisions stay exact."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def as_number(value):
    """Parse ints, ``"p/q"`` strings and decimal strings exactly; leave floats alone."""
    if isinstance(value, (Fraction, int)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return value
    raise TypeError(f"not a number: {value!r}")


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        object.__setattr__(self, "lo", exact_int(self.lo))
        object.__setattr__(self, "hi", exact_int(self.hi))
        if self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self):
        return self.hi - self.lo

    @property
    def midpoint(self):
        return (self.lo + self.hi) / 2

    def contains_point(self, x, slack=None) -> bool:
        s = slack_for(self.lo, self.hi, x) if slack is None else slack
        return self.lo - s <= x <= self.hi + s

    def contains(self, other: Interval, slack=None) -> bool:
        s = slack_for(self.lo, self.hi, other.lo, other.hi) if slack is None else slack
        return self.lo - s <= other.lo and other.hi <= self.hi + s

    def distance(self, other: Interval):
        """Gap between the two intervals; zero when they touch or overlap."""
        gap = max(other.lo - self.hi, self.lo - other.hi)
        return gap if gap > 0 else gap * 0

    def intersect(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if hi < lo:
            return None
        return Interval(lo, hi)

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def affine(self, scale, offset) -> Interval:
        """Image under ``x -> scale * x + offset``."""
        a, b = scale * self.lo + offset, scale * self.hi + offset
        return Interval(a, b) if a <= b else Interval(b, a)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __iter__(self):
        yield self.lo
        yield self.hi


def hull_of(intervals) -> Interval:
    intervals = list(intervals)
    return Interval(min(i.lo for i in intervals), max(i.hi for i in intervals))
