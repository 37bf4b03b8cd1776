"""Ranks from factorization, checked against the semisimple formula."""

import itertools

import numpy as np

from cohftvoa import A2_GRAM, fusion_datum_from_gram, rank_crosscheck, rank_exact

z2 = fusion_datum_from_gram([[2]])
V, W = 0, 1

# the Z/2 table: 2^g when the number of W insertions is even, else 0
table = np.zeros((4, 7), dtype=int)
for g in range(4):
    for q in range(7):
        if 2 * g - 2 + q + 1 > 0:
            table[g, q] = rank_exact(z2, g, [V] + [W] * q)
print("rank_g(V, W^q), rows g = 0..3:\n", table)

z3 = fusion_datum_from_gram(A2_GRAM)
print("Z/3, genus 2, (1,1,1):", rank_crosscheck(z3, 2, [1, 1, 1]))

worst = 0.0
for g in range(3):
    for n in range(1, 5):
        for mods in itertools.combinations_with_replacement(range(3), n):
            if 2 * g - 2 + n > 0:
                worst = max(worst, rank_crosscheck(z3, g, mods).discrepancy)
print(f"largest |semisimple - exact| over g <= 2, n <= 4: {worst:.2e}")
