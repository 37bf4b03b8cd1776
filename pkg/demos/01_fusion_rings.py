"""Fusion rings: build a few, check the axioms, diagonalize them."""

from fractions import Fraction

import numpy as np

from cohftvoa import FusionDatum, cyclic_datum, fuse, semisimple_decomposition, validate

# Z/4 fusion rules; conformal dimensions as for the lattice with Gram [[4]]
z4 = cyclic_datum(4, [0, Fraction(1, 8), Fraction(1, 2), Fraction(1, 8)])
print(z4)
print("axiom violations:", validate(z4))

# h_1 * h_3 = h_0, h_2 * h_2 = h_0
for i, j in [(1, 3), (2, 2), (1, 1)]:
    prod = fuse(z4, z4.basis(i), z4.basis(j))
    print(f"h_{i} * h_{j} =", {k: str(c) for k, c in prod.support().items()})

# the multiplication operators commute, so one generic combination diagonalizes all of them
mats = np.array([z4.structure_matrix(i) for i in range(4)])
print("fusion matrix of h_1:\n", mats[1])

ss = semisimple_decomposition(z4)
print("semisimple values:", np.round(ss.values, 12))  # all sqrt(4) = 2
print("residual:", ss.residual)

# Fibonacci rules are not pointed but still a fusion ring
N = np.zeros((2, 2, 2), dtype=int)
N[0, 0, 0] = 1
for p in [(0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]:
    N[p] = 1
fib = FusionDatum(["V", "t"], 0, [0, 1], N, [0, Fraction(2, 5)], Fraction(14, 5))
print("Fibonacci values:", np.round(semisimple_decomposition(fib).values.real, 6))

# breaking the delta rule is caught with a witness triple
bad = N.copy()
bad[1, 1, 0] = bad[1, 0, 1] = bad[0, 1, 1] = 0
for v in validate(FusionDatum(["V", "t"], 0, [0, 1], bad, [0, 0], 0, check=False)):
    print("  ", v)
