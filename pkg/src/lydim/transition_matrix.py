"""0/1 transition matrices and the subshifts of finite type they define.

Symbols are 1-based throughout: a matrix of size ``m`` acts on the alphabet
``{1, ..., m}`` and ``A[i, j]`` refers to row ``i`` and column ``j`` in that
numbering.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, ConvergenceError

DEFAULT_WORD_BUDGET = 1 << 20
BUDGET_ENV = "LYDIM_MAX_WORDS"


def word_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return int(os.environ.get(BUDGET_ENV, DEFAULT_WORD_BUDGET))


@dataclass(frozen=True)
class TransitionMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        m = len(rows)
        if m < 2:
            raise ValueError("transition matrix needs m >= 2")
        if any(len(row) != m for row in rows):
            raise ValueError("transition matrix must be square")
        if any(x not in (0, 1) for row in rows for x in row):
            raise ValueError("transition matrix entries must be 0 or 1")
        for i, row in enumerate(rows, start=1):
            if not any(row):
                raise ValueError(f"row {i} has no 1 (dead symbol)")
        for j in range(m):
            if not any(row[j] for row in rows):
                raise ValueError(f"column {j + 1} has no 1 (unreachable symbol)")

    @property
    def m(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def successors(self, i: int) -> list[int]:
        return [j for j in range(1, self.m + 1) if self[i, j]]

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def to_literal(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.entries)

    @classmethod
    def parse(cls, literal: str) -> TransitionMatrix:
        """Read ``"1,1,1;1,0,0;1,0,0"`` (rows by semicolons, entries by commas)."""
        rows = [r for r in literal.strip().split(";") if r.strip()]
        return cls(tuple(tuple(int(x) for x in r.split(",")) for r in rows))

    @classmethod
    def full(cls, m: int) -> TransitionMatrix:
        return cls(tuple((1,) * m for _ in range(m)))

    @classmethod
    def star(cls, m: int, i: int = 1, diagonal: int = 1) -> TransitionMatrix:
        """Strict star matrix: row and column ``i`` are ones, everything else zero.

        ``diagonal=0`` gives the zero-diagonal variant, which is representable
        but breaks the digit-elimination coding (see ``symbolic.phi``).
        """
        rows = [[1 if (r == i or c == i) else 0 for c in range(1, m + 1)] for r in range(1, m + 1)]
        rows[i - 1][i - 1] = diagonal
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def golden_mean(cls) -> TransitionMatrix:
        return cls(((1, 1), (1, 0)))


def is_irreducible(A: TransitionMatrix) -> bool:
    """Every symbol reaches every symbol (itself included) by a path of length >= 1."""
    for start in range(1, A.m + 1):
        seen = set()
        queue = deque(A.successors(start))
        while queue:
            j = queue.popleft()
            if j in seen:
                continue
            seen.add(j)
            queue.extend(A.successors(j))
        if len(seen) != A.m:
            return False
    return True


def branching_row(A: TransitionMatrix) -> int | None:
    for i, row in enumerate(A.entries, start=1):
        if sum(row) >= 2:
            return i
    return None


def is_star(A: TransitionMatrix, i: int = 1, strict: bool = False) -> bool:
    if not 1 <= i <= A.m:
        raise ValueError(f"symbol {i} outside 1..{A.m}")
    m = A.m
    if not all(A[i, j] for j in range(1, m + 1)) or not all(A[j, i] for j in range(1, m + 1)):
        return False
    if strict:
        return all(A[r, c] == 0 for r in range(1, m + 1) for c in range(1, m + 1) if r != i and c != i)
    return True


def is_zero_diagonal_star(A: TransitionMatrix, i: int = 1) -> bool:
    """Row and column ``i`` are ones except the diagonal entry, which is zero."""
    m = A.m
    others = [j for j in range(1, m + 1) if j != i]
    return A[i, i] == 0 and all(A[i, j] and A[j, i] for j in others)


def star_core(A: TransitionMatrix, i: int = 1) -> TransitionMatrix:
    """The strict star matrix sitting inside a matrix whose row/column ``i`` is full.

    Its subshift is contained in the subshift of ``A``; restricting the coding
    to it turns a semi-conjugacy into a conjugacy.
    """
    if not is_star(A, i):
        raise ValueError(f"row and column {i} of the matrix are not all ones")
    return TransitionMatrix.star(A.m, i)


def spectral_radius(A: TransitionMatrix, tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Perron root of ``A`` by power iteration on ``A + I``.

    The shift by the identity makes an irreducible matrix primitive, so the
    iteration converges even when ``A`` is periodic. Convergence is declared
    when the Collatz-Wielandt bracket ``[min (Bx)_i/x_i, max (Bx)_i/x_i]``,
    which always contains the Perron root of ``B = A + I``, is narrower than
    ``tol``.
    """
    B = A.to_array().astype(float) + np.eye(A.m)
    x = np.ones(A.m)
    lo = hi = np.nan
    for _ in range(max_iter):
        y = B @ x
        q = y / x
        lo, hi = q.min(), q.max()
        if hi - lo <= tol:
            break
        x = y / np.linalg.norm(y)
    else:
        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} steps (bracket {lo}..{hi}); "
            "the matrix is probably reducible",
            last=x,
        )
    return float((lo + hi) / 2 - 1)


def count_admissible_words(A: TransitionMatrix, n: int) -> int:
    if n < 1:
        raise ValueError("word length must be >= 1")
    counts = [1] * A.m
    for _ in range(n - 1):
        counts = [sum(counts[j - 1] for j in A.successors(i)) for i in range(1, A.m + 1)]
    return sum(counts)


def enumerate_admissible_words(A: TransitionMatrix, n: int, budget: int | None = None) -> list[tuple[int, ...]]:
    """All admissible words of length ``n`` in lexicographic order."""
    limit = word_budget(budget)
    total = count_admissible_words(A, n)
    if total > limit:
        raise BudgetExceededError(f"{total} words of length {n} exceed the budget of {limit}")
    words = [(i,) for i in range(1, A.m + 1)]
    for _ in range(n - 1):
        words = [w + (j,) for w in words for j in A.successors(w[-1])]
    return words
