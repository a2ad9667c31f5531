import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lydim import (
    BudgetExceededError,
    TransitionMatrix,
    branching_row,
    count_admissible_words,
    enumerate_admissible_words,
    is_irreducible,
    is_star,
    spectral_radius,
    star_core,
)
from lydim.transition_matrix import is_zero_diagonal_star

STAR3 = TransitionMatrix.parse("1,1,1;1,0,0;1,0,0")
GOLDEN = TransitionMatrix.parse("0,1;1,1")


def test_parse_roundtrip():
    assert STAR3.to_literal() == "1,1,1;1,0,0;1,0,0"
    assert STAR3[1, 3] == 1 and STAR3[3, 2] == 0
    assert STAR3.successors(2) == [1]


@pytest.mark.parametrize("bad", ["1", "1,1;1", "1,2;1,1", "1,0;1,0", "0,0;1,1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        TransitionMatrix.parse(bad)


def test_structure_queries():
    assert is_irreducible(STAR3)
    assert branching_row(STAR3) == 1
    assert is_star(STAR3) and is_star(STAR3, strict=True)
    assert not is_irreducible(TransitionMatrix.parse("1,1;0,1"))
    perm = TransitionMatrix.parse("0,1;1,0")
    assert is_irreducible(perm) and branching_row(perm) is None
    zd = TransitionMatrix.star(3, diagonal=0)
    assert is_zero_diagonal_star(zd) and not is_star(zd)
    assert star_core(TransitionMatrix.full(3)) == STAR3
    with pytest.raises(ValueError):
        star_core(GOLDEN)


def test_spectral_radius_oracles():
    assert spectral_radius(STAR3) == pytest.approx(2.0, abs=1e-10)
    assert spectral_radius(GOLDEN) == pytest.approx((1 + 5**0.5) / 2, abs=1e-10)
    assert spectral_radius(TransitionMatrix.star(3, diagonal=0)) == pytest.approx(2**0.5, abs=1e-10)
    assert spectral_radius(TransitionMatrix.full(4)) == pytest.approx(4.0, abs=1e-10)


def test_word_counts_and_enumeration():
    assert enumerate_admissible_words(STAR3, 2) == [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)]
    assert count_admissible_words(GOLDEN, 4) == 8
    assert count_admissible_words(TransitionMatrix.full(3), 5) == 243
    words = enumerate_admissible_words(TransitionMatrix.golden_mean(), 3)
    assert words == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 1, 2)]


def test_enumeration_budget(monkeypatch):
    with pytest.raises(BudgetExceededError):
        enumerate_admissible_words(TransitionMatrix.full(2), 10, budget=100)
    monkeypatch.setenv("LYDIM_MAX_WORDS", "10")
    with pytest.raises(BudgetExceededError):
        enumerate_admissible_words(TransitionMatrix.full(2), 4)


@st.composite
def irreducible_matrices(draw):
    m = draw(st.integers(2, 5))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), min_size=m, max_size=m))
    try:
        A = TransitionMatrix(tuple(map(tuple, rows)))
    except ValueError:
        A = TransitionMatrix.full(m)
    return A


@settings(max_examples=60, deadline=None)
@given(irreducible_matrices(), st.integers(1, 6))
def test_count_matches_enumeration_and_brute_force(A, n):
    words = enumerate_admissible_words(A, n)
    assert len(words) == count_admissible_words(A, n)
    assert words == sorted(words)
    brute = [w for w in itertools.product(range(1, A.m + 1), repeat=n)
             if all(A[a, b] for a, b in zip(w, w[1:]))]
    assert words == brute


@settings(max_examples=60, deadline=None)
@given(irreducible_matrices())
def test_spectral_radius_matches_numpy(A):
    if not is_irreducible(A):
        return
    rho = spectral_radius(A)
    assert rho == pytest.approx(max(abs(np.linalg.eigvals(A.to_array()))), abs=1e-9)
    if branching_row(A) is not None:
        assert rho > 1


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 6))
def test_strict_star_branching_row(m, i):
    i = min(i, m)
    A = TransitionMatrix.star(m, i=i, diagonal=0) if m > 2 else TransitionMatrix.star(m, i=i)
    if is_star(A, i, strict=True):
        assert branching_row(A) == i


def test_entropy_growth():
    for A in (TransitionMatrix.full(2), GOLDEN, STAR3):
        assert abs(math.log(count_admissible_words(A, 14)) / 14 - math.log(spectral_radius(A))) < 0.1
