"""Finite words, finite-horizon one-sided sequences, cylinders and the shift.

An infinite sequence is always handled through an explicit prefix (its
*horizon*). Anything that would need a symbol past the horizon raises
``HorizonError``; nothing is ever padded or extended silently.

The coding ``phi`` removes, reading left to right, the symbol that follows
each symbol other than 1. On the star subshift (row and column 1 all ones,
``(A)_11 = 1``) the removed symbol is always a 1, and ``phi`` is a bijection
onto the full shift whose inverse ``phi_inverse`` writes a 1 after every
symbol other than 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .errors import AdmissibilityError, HorizonError
from .transition_matrix import TransitionMatrix, is_star, is_zero_diagonal_star


class ZeroDiagonalStarWarning(UserWarning):
    """The star matrix has ``(A)_11 = 0``; phi is then not onto the full shift."""


def _check_symbols(symbols, m):
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    for k, a in enumerate(symbols):
        if not 1 <= a <= m:
            raise ValueError(f"symbol {a} at index {k} outside 1..{m}")


@dataclass(frozen=True)
class SymbolWord:
    symbols: tuple[int, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(a) for a in self.symbols))
        if not self.symbols:
            raise ValueError("a word must be nonempty")
        _check_symbols(self.symbols, self.m)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, k):
        return self.symbols[k]

    def __add__(self, other):
        tail = other.symbols if isinstance(other, SymbolWord) else tuple(other)
        return SymbolWord(self.symbols + tail, self.m)

    def __str__(self):
        return format_symbols(self.symbols)


@dataclass(frozen=True)
class SymbolStream:
    """Known prefix of an infinite one-sided sequence over ``{1..m}``."""

    symbols: tuple[int, ...]
    m: int
    provenance: str = "free"

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(a) for a in self.symbols))
        _check_symbols(self.symbols, self.m)

    @property
    def horizon(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return self.horizon

    def __getitem__(self, k):
        if isinstance(k, slice):
            start, stop, step = k.indices(1 << 62)
            if stop > self.horizon and k.stop is not None:
                raise HorizonError(f"slice up to {stop} exceeds horizon {self.horizon}")
            return self.symbols[k]
        if k < 0 or k >= self.horizon:
            raise HorizonError(f"index {k} outside horizon {self.horizon}")
        return self.symbols[k]

    def prefix(self, n: int) -> SymbolWord:
        return SymbolWord(self[:n], self.m)

    def __str__(self):
        return format_symbols(self.symbols)

    @classmethod
    def constant(cls, a: int, horizon: int, m: int) -> SymbolStream:
        return cls((a,) * horizon, m)


@dataclass(frozen=True)
class Cylinder:
    base: SymbolWord

    def __len__(self):
        return len(self.base)

    def contains(self, s: SymbolStream) -> bool:
        return tuple(s[: len(self.base)]) == self.base.symbols


def format_symbols(symbols: Iterable[int]) -> str:
    return " ".join(str(a) for a in symbols)


def parse_symbols(text: str) -> tuple[int, ...]:
    """Read ``"1 2 1 1 3"`` or a JSON-style ``"[1, 2, 1]"``."""
    cleaned = text.strip().strip("[]").replace(",", " ")
    return tuple(int(tok) for tok in cleaned.split())


def shift(s: SymbolStream, k: int = 1) -> SymbolStream:
    if k < 0:
        raise ValueError("shift amount must be nonnegative")
    if k >= s.horizon and k > 0:
        raise HorizonError(f"cannot shift by {k}: horizon is {s.horizon}")
    return SymbolStream(s.symbols[k:], s.m, s.provenance)


def metric(s: SymbolStream, t: SymbolStream) -> float:
    """``2**-k`` for the first index ``k`` of disagreement; 0 if the prefixes agree.

    A value of 0 only means agreement up to the horizon.
    """
    if s.m != t.m:
        raise ValueError(f"alphabets differ ({s.m} vs {t.m})")
    if s.horizon != t.horizon:
        raise ValueError(f"horizons differ ({s.horizon} vs {t.horizon})")
    for k, (a, b) in enumerate(zip(s.symbols, t.symbols)):
        if a != b:
            return 2.0 ** -k
    return 0.0


def is_admissible(w, A: TransitionMatrix) -> bool:
    symbols = w.symbols if hasattr(w, "symbols") else tuple(w)
    if hasattr(w, "m") and w.m != A.m:
        raise ValueError(f"alphabet size {w.m} does not match matrix size {A.m}")
    return all(A[a, b] for a, b in zip(symbols, symbols[1:]))


def first_inadmissible(symbols, A: TransitionMatrix) -> int | None:
    """Index ``k`` of the first forbidden pair ``(symbols[k], symbols[k+1])``."""
    for k, (a, b) in enumerate(zip(symbols, symbols[1:])):
        if not A[a, b]:
            return k
    return None


def _check_star_for_phi(A: TransitionMatrix):
    if is_star(A, 1):
        return
    if is_zero_diagonal_star(A, 1):
        warnings.warn(
            "star matrix with (A)_11 = 0: phi is injective but not onto the full shift",
            ZeroDiagonalStarWarning,
            stacklevel=3,
        )
        return
    raise ValueError("phi needs row 1 and column 1 of the matrix to be all ones")


def phi_symbols(symbols) -> tuple[int, ...]:
    out = []
    k, n = 0, len(symbols)
    while k < n:
        a = symbols[k]
        out.append(a)
        if a != 1:
            if k + 1 >= n:
                raise HorizonError(f"symbol {a} at the last position {k}: its successor is unknown")
            k += 2
        else:
            k += 1
    return tuple(out)


def phi(s: SymbolStream, A: TransitionMatrix) -> SymbolStream:
    """Delete the successor of every symbol other than 1 (left to right)."""
    if s.m != A.m:
        raise ValueError(f"alphabet size {s.m} does not match matrix size {A.m}")
    _check_star_for_phi(A)
    k = first_inadmissible(s.symbols, A)
    if k is not None:
        raise AdmissibilityError(f"stream is not admissible at positions {k}, {k + 1}")
    return SymbolStream(phi_symbols(s.symbols), s.m, s.provenance)


def phi_inverse_symbols(symbols) -> tuple[int, ...]:
    out = []
    for a in symbols:
        out.append(a)
        if a != 1:
            out.append(1)
    return tuple(out)


def phi_inverse(alpha):
    """Write a 1 after every symbol other than 1. Works on words and streams."""
    if isinstance(alpha, SymbolWord):
        return SymbolWord(phi_inverse_symbols(alpha.symbols), alpha.m)
    return SymbolStream(phi_inverse_symbols(alpha.symbols), alpha.m, alpha.provenance)
