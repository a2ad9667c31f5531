"""A Li-Yorke partner for a symbolic sequence, and the embedding overhead."""
import random

from lydim import (
    SimilarityIFS,
    SymbolStream,
    TransitionMatrix,
    WitnessSchedule,
    build_witness,
    code_point,
    delta_k,
    verify_liyorke_geometric,
    verify_liyorke_symbolic,
)

rng = random.Random(1)
A = TransitionMatrix.star(2)
sched = WitnessSchedule.power(2)
print("sync positions:", sched.sync_positions(11))

H = 420
s = SymbolStream(tuple(rng.randint(1, 2) if k % 2 == 0 else 1 for k in range(H)), 2)
payload = SymbolStream(tuple(rng.choice((1, 2)) if k % 2 == 0 else 1 for k in range(H)), 2)
t = build_witness(s, sched, A, payload)
print("s:", "".join(map(str, s.symbols[:60])))
print("t:", "".join(map(str, t.symbols[:60])))

for row in verify_liyorke_symbolic(s, t, sched, 10).rows:
    print(f"  i={row.i:2d} u={row.u:3d} prox={row.prox:.2e} sep={row.sep}")

# the same pair as points of the middle-thirds Cantor set
cantor = SimilarityIFS.middle_thirds()
x, y = code_point(cantor, s.symbols).lo, code_point(cantor, t.symbols).lo
print(verify_liyorke_geometric(cantor, x, y, 400, eps_prox=3.0**-10, eps_sep=1 / 9).verdict())

alpha = [rng.randint(1, 2) for _ in range(2001)]
for k in (10, 100, 1000, 2000):
    d = delta_k(alpha[: k + 1], sched)
    print(f"delta({k}) = {d.delta}, bound {d.bound}, delta/k = {d.delta / k:.3f}")
