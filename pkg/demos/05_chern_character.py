"""The stable-graph Chern character of a bundle of coinvariants."""

from cohftvoa import A2_GRAM, E8_GRAM, chern_character, chern_smooth, fusion_datum_from_gram

z3 = fusion_datum_from_gram(A2_GRAM)

P = chern_character(z3, 1, [1, 2])
print(repr(P))
for d in range(P.max_degree + 1):
    print(f"  degree {d}:", P.degree_part(d))

# restricted to the open part, only rank * exp(c/2 lambda + sum a_i psi_i) survives
print("smooth part agrees:", P.restrict_to_smooth() == chern_smooth(z3, 1, [1, 2]))

# a larger example; the class grows quickly with the number of strata
big = chern_character(z3, 1, [1, 1, 1])
print(f"(1,3) with modules (1,1,1): {len(big)} terms, degrees {sorted({g.degree for g in big.terms})}")

# holomorphic: nothing but exp(4 lambda)
e8 = fusion_datum_from_gram(E8_GRAM)
print("E8, genus 2:", chern_character(e8, 2, []))
