"""Subshifts of finite type: structure, word counts and entropy."""
import math

from lydim import (
    TransitionMatrix,
    branching_row,
    count_admissible_words,
    enumerate_admissible_words,
    is_irreducible,
    is_star,
    spectral_radius,
)

matrices = {
    "full 2-shift": TransitionMatrix.full(2),
    "golden mean": TransitionMatrix.parse("0,1;1,1"),
    "star m=3": TransitionMatrix.star(3),
}

for name, A in matrices.items():
    print(f"{name}: {A.to_literal()}")
    print("  irreducible", is_irreducible(A), "| branching row", branching_row(A), "| star", is_star(A))
    rho = spectral_radius(A)
    # growth rate of word counts against the log of the spectral radius
    for n in (4, 8, 14):
        print(f"  n={n:2d} words={count_admissible_words(A, n):6d} log(count)/n={math.log(count_admissible_words(A, n)) / n:.4f}")
    print(f"  log rho = {math.log(rho):.4f}")

print("star m=3 words of length 2:", enumerate_admissible_words(TransitionMatrix.star(3), 2))
