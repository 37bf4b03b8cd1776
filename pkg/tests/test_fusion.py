from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohftvoa import (
    AxiomError,
    FusionDatum,
    FusionVector,
    SemisimpleError,
    StructuralError,
    cyclic_datum,
    fuse,
    holomorphic_datum,
    pairing,
    semisimple_decomposition,
    validate,
)
from oracles import brute_product


def z2_tensor():
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = 1
    for p in [(0, 1, 1), (1, 0, 1), (1, 1, 0)]:
        N[p] = 1
    return N


def test_holomorphic_valid():
    d = holomorphic_datum(8)
    assert validate(d) == []
    assert d.index("V") == 0


def test_z2_lattice_valid(z2):
    assert validate(z2) == []
    assert z2.conf_dim == (0, Fraction(1, 4))


def test_delta_rule_violation_reported():
    N = z2_tensor()
    N[1, 1, 0] = N[1, 0, 1] = N[0, 1, 1] = 0
    with pytest.raises(AxiomError) as err:
        FusionDatum(["V", "W"], 0, [0, 1], N, [0, Fraction(1, 4)], 1)
    kinds = {(v.axiom, v.witness) for v in err.value.violations}
    assert ("DeltaRule", (1, 1, 0)) in kinds


def test_asymmetric_tensor_reported():
    N = z2_tensor()
    N[1, 1, 0] = 0  # only one ordering broken
    report = validate(FusionDatum(["V", "W"], 0, [0, 1], N, [0, 0], 1, check=False))
    assert any(v.axiom == "S3-symmetry" for v in report)


def test_conformal_dimension_rules():
    report = validate(FusionDatum(["V", "W"], 0, [0, 1], z2_tensor(), [Fraction(1, 2), 0], 1, check=False))
    assert report
    assert all(v.witness for v in report)


def test_structural_errors():
    with pytest.raises(StructuralError):
        FusionDatum(["V"], 3, [0], np.ones((1, 1, 1)), [0], 0)
    with pytest.raises(StructuralError):
        FusionDatum(["V", "W"], 0, [0, 1], np.ones((1, 1, 1)), [0, 0], 0)
    with pytest.raises(StructuralError):
        FusionDatum(["V"], 0, [0], np.ones((1, 1, 1)), [0.5], 0)


def test_two_dimensional_rings_are_associative():
    N = z2_tensor()
    N[1, 1, 1] = 1  # Fibonacci rules
    assert validate(FusionDatum(["V", "t"], 0, [0, 1], N, [0, Fraction(2, 5)], Fraction(14, 5), check=False)) == []


def test_non_associative_reported():
    # a*a = V + a, b*b = V + b, a*b = 0: (a*a)*b = b but a*(a*b) = 0
    N = np.zeros((3, 3, 3), dtype=int)
    N[0, 0, 0] = 1
    for x in (1, 2):
        for p in [(0, x, x), (x, 0, x), (x, x, 0)]:
            N[p] = 1
        N[x, x, x] = 1
    report = validate(FusionDatum(["V", "a", "b"], 0, [0, 1, 2], N, [0, 0, 0], 0, check=False))
    assert any(v.axiom == "associativity" for v in report)


def test_fuse_examples(z2, z3):
    W = z2.basis(1)
    assert fuse(z2, W, W) == z2.basis(0)
    # Z/3 group law
    for i in range(3):
        for j in range(3):
            assert fuse(z3, z3.basis(i), z3.basis(j)) == z3.basis((i + j) % 3)


def test_fuse_matches_tensor(z4):
    for i in range(z4.size):
        for j in range(z4.size):
            got = fuse(z4, z4.basis(i), z4.basis(j)).coefficients
            assert [int(x) for x in got] == brute_product(z4, i, j)


def test_pairing(z3):
    V, W1, W2 = (z3.basis(i) for i in range(3))
    assert pairing(z3, V, V) == 1
    assert pairing(z3, W1, W2) == 1
    assert pairing(z3, W1, W1) == 0


def test_frobenius_compatibility(z4, z5):
    for d in (z4, z5):
        for a in range(d.size):
            for b in range(d.size):
                for c in range(d.size):
                    x, y, z = d.basis(a), d.basis(b), d.basis(c)
                    assert pairing(d, fuse(d, x, y), z) == pairing(d, x, fuse(d, y, z))


vectors = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=4, max_size=4)


@settings(max_examples=60, deadline=None)
@given(vectors, vectors, vectors)
def test_fuse_commutative_associative(a, b, c):
    d = cyclic_datum(4, [0, Fraction(1, 8), Fraction(1, 2), Fraction(1, 8)])
    x, y, z = (FusionVector(tuple(v)) for v in (a, b, c))
    assert fuse(d, x, y) == fuse(d, y, x)
    assert fuse(d, fuse(d, x, y), z) == fuse(d, x, fuse(d, y, z))
    assert fuse(d, d.basis(d.unit), x) == x


def test_semisimple_z2(z2):
    ss = semisimple_decomposition(z2)
    assert np.allclose(ss.values, np.sqrt(2), atol=1e-12)
    s = 1 / np.sqrt(2)
    rows = {tuple(np.round(r.real, 12)) for r in ss.basis}
    assert rows == {(round(s, 12), round(s, 12)), (round(s, 12), round(-s, 12))}
    assert ss.residual <= 1e-9


def test_semisimple_holomorphic():
    ss = semisimple_decomposition(holomorphic_datum(0))
    assert np.allclose(ss.basis, [[1]]) and np.allclose(ss.values, [1])


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
def test_semisimple_cyclic_values(m):
    ss = semisimple_decomposition(cyclic_datum(m))
    assert np.allclose(ss.values, np.sqrt(m), atol=1e-9)
    assert ss.residual <= 1e-9


def test_semisimple_deterministic(z5):
    a = semisimple_decomposition(z5)
    b = semisimple_decomposition(z5)
    assert np.array_equal(a.basis, b.basis)


def test_semisimple_failure_is_diagnosed():
    # x * x = 0 with V * x = x: a nilpotent, so the algebra is not semisimple
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    d = FusionDatum(["V", "x"], 0, [0, 1], N, [0, 0], 0, check=False)
    with pytest.raises(SemisimpleError):
        semisimple_decomposition(d)
