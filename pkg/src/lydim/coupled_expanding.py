"""Piecewise-affine strictly A-coupled-expanding interval maps.

A map is given by disjoint compact pieces ``V_1..V_m`` and, on each piece, an
affine branch of slope ``+-lambda_i``. It is A-coupled-expanding when the
image of ``V_i`` covers every ``V_j`` with ``A[i, j] = 1``, and strictly so
when the pieces are at positive distance from each other.

Basic sets are the intervals ``Delta_w = {x : f^j(x) in V_{w_j}}`` for
admissible words ``w``; a word of length ``n`` is said to have depth ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    AdmissibilityError,
    BudgetExceededError,
    ConsistencyError,
    EscapeError,
    InfeasibleCoveringError,
    SeparationError,
)
from .intervals import Interval, as_number, exact_int, hull_of, slack_for
from .symbolic import SymbolWord, first_inadmissible
from .transition_matrix import (
    TransitionMatrix,
    branching_row,
    count_admissible_words,
    is_irreducible,
    word_budget,
)


@dataclass(frozen=True)
class Branch:
    interval: Interval
    lam: object
    sign: int = 1
    offset: object = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", exact_int(self.lam))
        object.__setattr__(self, "offset", exact_int(self.offset))

    @property
    def slope(self):
        return self.sign * self.lam

    def __call__(self, x):
        return self.slope * x + self.offset

    def image(self) -> Interval:
        return self.interval.affine(self.slope, self.offset)

    def preimage(self, target: Interval) -> Interval | None:
        """Points of this piece that the branch sends into ``target``."""
        pulled = target.affine(1 / self.slope, -self.offset / self.slope)
        return pulled.intersect(self.interval)


@dataclass(frozen=True)
class PiecewiseExpandingMap:
    domain: Interval
    branches: tuple[Branch, ...]
    matrix: TransitionMatrix

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if len(self.branches) != self.matrix.m:
            raise ValueError(f"{len(self.branches)} branches for a {self.matrix.m}x{self.matrix.m} matrix")

    @property
    def m(self) -> int:
        return len(self.branches)

    @property
    def pieces(self) -> list[Interval]:
        return [b.interval for b in self.branches]

    @property
    def lambdas(self) -> tuple:
        return tuple(b.lam for b in self.branches)

    def piece_of(self, x) -> int | None:
        for i, b in enumerate(self.branches, start=1):
            if b.interval.contains_point(x, slack=0):
                return i
        return None

    def __call__(self, x):
        i = self.piece_of(x)
        if i is None:
            raise EscapeError(0, x)
        return self.branches[i - 1](x)

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return str(x) if x.denominator != 1 else x.numerator
            return x

        return {
            "domain": [num(self.domain.lo), num(self.domain.hi)],
            "matrix": self.matrix.to_literal(),
            "branches": [
                {
                    "interval": [num(b.interval.lo), num(b.interval.hi)],
                    "lambda": num(b.lam),
                    "sign": "+" if b.sign > 0 else "-",
                    "offset": num(b.offset),
                }
                for b in self.branches
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> PiecewiseExpandingMap:
        """Load a map; branch offsets default to the centered covering placement."""
        A = TransitionMatrix.parse(data["matrix"])
        pieces = [Interval(as_number(b["interval"][0]), as_number(b["interval"][1])) for b in data["branches"]]
        domain = Interval(*(as_number(x) for x in data["domain"])) if "domain" in data else hull_of(pieces)
        branches = []
        for i, (b, V) in enumerate(zip(data["branches"], pieces), start=1):
            lam = as_number(b["lambda"])
            sign = _parse_sign(b.get("sign", "+"))
            if "offset" in b:
                branches.append(Branch(V, lam, sign, as_number(b["offset"])))
            else:
                branches.append(_centered_branch(V, lam, sign, _required_hull(A, pieces, i)))
        return cls(domain, tuple(branches), A)


def _parse_sign(sign) -> int:
    if sign in ("+", 1, "1", "+1"):
        return 1
    if sign in ("-", -1, "-1"):
        return -1
    raise ValueError(f"bad branch sign {sign!r}")


def _required_hull(A: TransitionMatrix, pieces: Sequence[Interval], i: int) -> Interval:
    return hull_of(pieces[j - 1] for j in A.successors(i))


def _centered_branch(V: Interval, lam, sign: int, target: Interval) -> Branch:
    length = lam * V.length
    lo = target.midpoint - length / 2
    hi = lo + length
    # increasing branch sends V.lo to lo; decreasing branch sends V.lo to hi
    offset = lo - lam * V.lo if sign > 0 else hi + lam * V.lo
    return Branch(V, lam, sign, offset)


def synthesize(
    A: TransitionMatrix,
    layout: Sequence,
    lambdas: Sequence,
    signs: Sequence | None = None,
    domain: Interval | None = None,
) -> PiecewiseExpandingMap:
    """Build the affine map whose branch images are the smallest centered covers.

    Branch ``i`` has slope ``+-lambda_i`` and its image is centered on the hull
    of the pieces that row ``i`` of ``A`` must cover. Pass ``Fraction``
    endpoints and rates to keep every later computation exact.
    """
    pieces = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in layout]
    if len(pieces) != A.m or len(lambdas) != A.m:
        raise ValueError("need one piece and one expansion rate per symbol")
    signs = [1] * A.m if signs is None else [_parse_sign(s) for s in signs]
    for i in range(A.m):
        for j in range(i + 1, A.m):
            gap = pieces[i].distance(pieces[j])
            if not gap > 0:
                raise SeparationError(i + 1, j + 1, gap)
    branches = []
    for i, (V, lam, sign) in enumerate(zip(pieces, lambdas, signs), start=1):
        if not lam > 1:
            raise ValueError(f"branch {i}: expansion rate {lam} must exceed 1")
        target = _required_hull(A, pieces, i)
        if lam * V.length < target.length - slack_for(lam, V.lo, V.hi, target.lo, target.hi):
            raise InfeasibleCoveringError(i, target.length / V.length)
        branches.append(_centered_branch(V, lam, sign, target))
    if domain is None:
        domain = hull_of(pieces)
    return PiecewiseExpandingMap(domain, tuple(branches), A)


@dataclass
class MapReport:
    covering: list[dict]
    gaps: dict
    expansion: list[dict]
    strict: bool
    interiors_disjoint: bool
    within_domain: bool
    branching_row: int | None
    irreducible: bool

    @property
    def ok(self) -> bool:
        return (
            all(r["ok"] for r in self.covering)
            and all(r["ok"] for r in self.expansion)
            and self.strict
            and self.within_domain
            and self.branching_row is not None
            and self.irreducible
        )

    def failures(self) -> list[str]:
        out = [f"row {r['row']} covering" for r in self.covering if not r["ok"]]
        out += [f"branch {r['branch']} expansion" for r in self.expansion if not r["ok"]]
        if not self.strict:
            out.append("strictness (pieces not positively separated)")
        if not self.within_domain:
            out.append("pieces outside domain")
        if self.branching_row is None:
            out.append("no branching row (every row sum is 1)")
        if not self.irreducible:
            out.append("matrix not irreducible")
        return out


def verify(f: PiecewiseExpandingMap) -> MapReport:
    """Check every hypothesis a strictly A-coupled-expanding affine map must satisfy."""
    A, pieces = f.matrix, f.pieces
    covering = []
    for i, b in enumerate(f.branches, start=1):
        target = _required_hull(A, pieces, i)
        image = b.image()
        covering.append({"row": i, "image": image, "required": target, "ok": image.contains(target)})
    gaps = {}
    for i in range(f.m):
        for j in range(i + 1, f.m):
            gaps[(i + 1, j + 1)] = pieces[i].distance(pieces[j])
    strict = all(g > 0 for g in gaps.values())
    interiors_disjoint = all(
        pieces[i].hi <= pieces[j].lo or pieces[j].hi <= pieces[i].lo for i in range(f.m) for j in range(i + 1, f.m)
    )
    expansion = [{"branch": i, "lambda": b.lam, "ok": b.lam > 1} for i, b in enumerate(f.branches, start=1)]
    return MapReport(
        covering=covering,
        gaps=gaps,
        expansion=expansion,
        strict=strict,
        interiors_disjoint=interiors_disjoint,
        within_domain=all(f.domain.contains(V) for V in pieces),
        branching_row=branching_row(A),
        irreducible=is_irreducible(A),
    )


@dataclass(frozen=True)
class BasicSet:
    word: tuple[int, ...]
    interval: Interval = field(compare=False)

    @property
    def diameter(self):
        return self.interval.length


def _as_word(w) -> tuple[int, ...]:
    return tuple(w.symbols) if isinstance(w, SymbolWord) else tuple(w)


def basic_set(f: PiecewiseExpandingMap, w) -> BasicSet:
    """``Delta_w``, computed by pulling ``V_{w_last}`` back through the branches."""
    word = _as_word(w)
    if not word:
        raise ValueError("empty word")
    k = first_inadmissible(word, f.matrix)
    if k is not None:
        raise AdmissibilityError(f"word {word} is not admissible at positions {k}, {k + 1}")
    interval = f.branches[word[-1] - 1].interval
    for a in reversed(word[:-1]):
        interval = f.branches[a - 1].preimage(interval)
        if interval is None or not interval.length > 0:
            raise ConsistencyError(f"basic set of {word} is empty or degenerate; is the map coupled-expanding?")
    return BasicSet(word, interval)


def limit_set_cover(f: PiecewiseExpandingMap, n: int, budget: int | None = None) -> list[BasicSet]:
    """All basic sets of depth ``n``, in lexicographic word order.

    Built level by level: ``Delta_{i w}`` is the preimage of ``Delta_w`` under
    branch ``i``, so each level costs one affine pull-back per word.
    """
    if n < 1:
        raise ValueError("depth must be >= 1")
    limit = word_budget(budget)
    if count_admissible_words(f.matrix, n) > limit:
        raise BudgetExceededError(f"depth {n} cover exceeds the budget of {limit} basic sets")
    A = f.matrix
    level = {(i,): f.branches[i - 1].interval for i in range(1, A.m + 1)}
    for _ in range(n - 1):
        nxt = {}
        for w, iv in level.items():
            for i in range(1, A.m + 1):
                if A[i, w[0]]:
                    pulled = f.branches[i - 1].preimage(iv)
                    if pulled is None or not pulled.length > 0:
                        raise ConsistencyError(f"basic set of {(i,) + w} is empty or degenerate")
                    nxt[(i,) + w] = pulled
        level = nxt
    return [BasicSet(w, level[w]) for w in sorted(level)]


def diameter_bound(f: PiecewiseExpandingMap, n: int):
    """``diam(D) / (min lambda)**n`` for basic sets of words of length ``n``.

    Holds whenever every branch image lies in the domain, since then
    ``lambda_i * |V_i| <= diam(D)``.
    """
    return f.domain.length / min(f.lambdas) ** n


def code_orbit(f: PiecewiseExpandingMap, x, n: int) -> SymbolWord:
    """Itinerary ``(a_0..a_n)`` with ``f^j(x)`` in ``V_{a_j}``."""
    word = []
    for step in range(n + 1):
        i = f.piece_of(x)
        if i is None:
            raise EscapeError(step, x)
        if word and not f.matrix[word[-1], i]:
            raise AdmissibilityError(f"step {step}: transition {word[-1]} -> {i} is not allowed by the matrix")
        word.append(i)
        if step < n:
            x = f.branches[i - 1](x)
    return SymbolWord(tuple(word), f.m)


def orbit(f, x, steps: int) -> list:
    """``[x, f(x), ..., f^steps(x)]``; ``f`` is any callable raising ``EscapeError``."""
    points = [x]
    for step in range(1, steps + 1):
        try:
            x = f(x)
        except EscapeError as exc:
            raise EscapeError(step - 1, exc.point) from None
        points.append(x)
    return points


def coded_point(f: PiecewiseExpandingMap, w):
    """A point whose itinerary starts with ``w`` (midpoint of its basic set)."""
    return basic_set(f, w).interval.midpoint


def inverse_branch(f: PiecewiseExpandingMap, i: int):
    """``(f|V_i)^{-1}`` acting on intervals; the result is clipped to ``V_i``."""
    return f.branches[i - 1].preimage


def star_contractions(f: PiecewiseExpandingMap) -> list[tuple[object, callable]]:
    """Contractions generating the invariant set of a strict-star map.

    ``S_1 = (f|V_1)^{-1}`` with ratio ``1/lambda_1`` and, for ``i >= 2``,
    ``S_i = (f^2|V_i)^{-1}``, the branch-``i`` inverse after the branch-1
    inverse, with ratio ``1/(lambda_1 lambda_i)``.
    """
    b1 = f.branches[0]

    def first(iv):
        return b1.preimage(iv)

    def make(bi):
        def second(iv):
            mid = b1.preimage(iv)
            return None if mid is None else bi.preimage(mid)

        return second

    out = [(1 / b1.lam, first)]
    out += [(1 / (b1.lam * bi.lam), make(bi)) for bi in f.branches[1:]]
    return out
