"""Cylinder-level local dimension along the witness embedding."""
import random

from lydim import SimilarityIFS, SymbolStream, TransitionMatrix, WitnessSchedule, local_dimension_probe, moran_root

cantor = SimilarityIFS.middle_thirds()
D = moran_root(cantor.ratios).p
rng = random.Random(0)
ks = [50, 200, 800, 3200]
alpha = SymbolStream(tuple(rng.randint(1, 2) for _ in range(ks[-1] + 1)), 2)

for label, sched in [("identity", None), ("n^2", WitnessSchedule.power(2)), ("n^3", WitnessSchedule.power(3))]:
    rows = local_dimension_probe(cantor, sched, TransitionMatrix.star(2), alpha, ks)
    print(label.ljust(9), "  ".join(f"k={k}: {r:.4f}" for k, r in rows), f"(D={D:.4f})")
