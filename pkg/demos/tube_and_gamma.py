# Map symbols in a rank-m tube and the matrix ring Gamma(m) that realises them.
import itertools
import random

from tamestrat.fields import PrimeField
from tamestrat.tube import gamma_localization_witness, gamma_ring, pi, pi_law_check

m = 3
print("pi_{r,s} in a rank-3 tube (source, shift):")
for r, s in itertools.product(range(1, m + 1), repeat=2):
    f = pi(r, s, m)
    print(f"  pi({r},{s}) -> ({f.source}, {f.shift})")

laws = {(r, s, t): pi_law_check(r, s, t, m) for r, s, t in itertools.product(range(1, m + 1), repeat=3)}
print("wound triples:", [k for k, v in laws.items() if v == "Wound"][:6], "...")

G = gamma_ring(m, 8, PrimeField(5))
J = G.J()
print("J =", J)
print("J^3 == x*I:", J**3 == G.x_identity())

rng = random.Random(1)
A, B = G.random_member(rng, degree=2), G.random_member(rng, degree=2)
print("A*B stays in Gamma(3):", (A * B).is_member())

w = gamma_localization_witness(4, 16)
print("m=4 witness ok:", w.ok, "first witnesses:", w.witnesses[:4])
