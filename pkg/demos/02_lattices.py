"""Even lattices: discriminant groups, conformal dimensions, fusion data."""

from cohftvoa import A2_GRAM, E8_GRAM, discriminant_group, fusion_datum_from_gram, smith_normal_form

A4 = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]

S, U, V = smith_normal_form([[4, 2], [2, 4]])
print("Smith form of [[4,2],[2,4]]:\n", S)
print("U A V == S:", (U.dot([[4, 2], [2, 4]]).dot(V) == S).all())

for name, G in [("[[2]]", [[2]]), ("[[6]]", [[6]]), ("A2", A2_GRAM), ("A4", A4), ("E8", E8_GRAM), ("[[4,2],[2,4]]", [[4, 2], [2, 4]])]:
    disc = discriminant_group(G)
    datum = fusion_datum_from_gram(G)
    dims = ", ".join(f"{lab}:{a}" for lab, a in zip(datum.modules, datum.conf_dim))
    print(f"{name:>14}  L'/L = {disc.elementary_divisors or '(trivial)'}  c = {datum.central_charge}  a = {dims}")

# coset representatives live in [0,1)^d
for x, rep in discriminant_group(A2_GRAM).coset_reps.items():
    print(x, [str(v) for v in rep])
