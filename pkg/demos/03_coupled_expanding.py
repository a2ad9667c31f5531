"""Build a coupled-expanding interval map and look at its Cantor set."""
from fractions import Fraction as F

from lydim import (
    InfeasibleCoveringError,
    Interval,
    TransitionMatrix,
    code_orbit,
    coded_point,
    limit_set_cover,
    synthesize,
    verify,
)

A = TransitionMatrix.star(2)
f = synthesize(A, [Interval(0, F(9, 20)), Interval(F(11, 20), 1)], [F(20, 9), 2])
for i, b in enumerate(f.branches, start=1):
    print(f"branch {i}: V={b.interval} slope={b.slope} image={b.image()}")
print("verify:", verify(f).failures() or "all hypotheses hold")

for b in limit_set_cover(f, 4):
    print("".join(map(str, b.word)), b.interval, "diam", b.diameter)

x = coded_point(f, (1, 2, 1, 1, 2))
print("point", x, "has itinerary", code_orbit(f, x, 4))

try:
    synthesize(TransitionMatrix.full(2), [Interval(0, F(1, 3)), Interval(F(2, 3), 1)], [3, 2])
except InfeasibleCoveringError as exc:
    print("infeasible:", exc)
