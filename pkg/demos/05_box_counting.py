"""Box-counting slopes against the Moran root for three example maps."""
from fractions import Fraction as F

from lydim import (
    Interval,
    TransitionMatrix,
    compare_to_moran,
    estimate_dimension,
    moran_root,
    moran_root_star,
    synthesize,
)

full = TransitionMatrix.full(2)
maps = {
    "middle thirds": (synthesize(full, [Interval(0, F(1, 3)), Interval(F(2, 3), 1)], [3, 3]), moran_root([F(1, 3)] * 2)),
    "lambda 2,4": (synthesize(full, [Interval(0, F(1, 2)), Interval(F(3, 4), 1)], [2, 4]), moran_root([F(1, 2), F(1, 4)])),
    "star 20/9,2": (
        synthesize(TransitionMatrix.star(2), [Interval(0, F(9, 20)), Interval(F(11, 20), 1)], [F(20, 9), 2]),
        moran_root_star([F(20, 9), 2]),
    ),
}

for name, (f, root) in maps.items():
    est = estimate_dimension(f, range(4, 12))
    cmp = compare_to_moran(est, root, 0.05)
    print(f"{name:14s} slope={est.slope:.5f} root={root.p:.5f} gap={cmp.gap:+.4f} rms={est.residual:.1e} -> {cmp.as_dict()['verdict']}")
    for eps, n in est.scales[:3]:
        print(f"    eps={eps:.3e}  N={n}")
