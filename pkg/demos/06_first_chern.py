"""The first Chern class two ways: from boundary divisors, and from P_V."""

import itertools
import time

from cohftvoa import A2_GRAM, first_chern_closed_form, first_chern_from_character, fusion_datum_from_gram

z2 = fusion_datum_from_gram([[2]])
print("Z/2, (1,1), V:", first_chern_closed_form(z2, 1, [0]))

z3 = fusion_datum_from_gram(A2_GRAM)
print("Z/3, (0,4), (1,1,2,2):", first_chern_closed_form(z3, 0, [1, 1, 2, 2]))

t = time.perf_counter()
count = 0
for g in range(3):
    for n in range(5):
        if 2 * g - 2 + n <= 0:
            continue
        for mods in itertools.combinations_with_replacement(range(3), n):
            assert first_chern_closed_form(z3, g, mods) == first_chern_from_character(z3, g, mods)
            count += 1
print(f"{count} configurations agree exactly ({time.perf_counter() - t:.2f} s)")
