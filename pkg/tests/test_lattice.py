import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohftvoa import (
    A2_GRAM,
    E8_GRAM,
    InvalidLatticeError,
    conformal_dimension,
    discriminant_group,
    fusion_datum_from_gram,
    rank_exact,
    smith_normal_form,
    validate,
    validate_gram,
)
from conftest import A4_GRAM
from oracles import _det_fraction, cvp_min, random_even_lattice


def test_validate_gram_examples():
    assert validate_gram([[2]]) == []
    assert validate_gram(A2_GRAM) == []
    assert validate_gram(E8_GRAM) == []
    (v,) = validate_gram([[1]])
    assert v.axiom == "even" and v.witness == (0,)


def test_validate_gram_failures():
    assert [v.axiom for v in validate_gram([[2, 1], [0, 2]])] == ["symmetry"]
    assert [v.axiom for v in validate_gram([[2, 3], [3, 2]])] == ["positive-definite"]
    assert validate_gram([[2, 1]])[0].axiom == "square"
    with pytest.raises(InvalidLatticeError):
        discriminant_group([[0]])


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=80, deadline=None)
@given(square)
def test_smith_normal_form(A):
    S, U, V = smith_normal_form(A)
    A = np.array(A, dtype=object)
    assert (U.dot(A).dot(V) == S).all()
    n = len(A)
    assert abs(_det_fraction(U.tolist())) == 1 and abs(_det_fraction(V.tolist())) == 1
    diag = [int(S[i, i]) for i in range(n)]
    assert all(S[i, j] == 0 for i in range(n) for j in range(n) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    assert math.prod(diag) == abs(_det_fraction(A.tolist()))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_rank_one_lattices(k):
    disc = discriminant_group([[2 * k]])
    assert disc.elementary_divisors == (2 * k,)
    assert disc.coset_reps[(1,)] == (Fraction(1, 2 * k),)


def test_known_groups():
    assert discriminant_group([[2]]).coset_reps == {(0,): (0,), (1,): (Fraction(1, 2),)}
    assert discriminant_group(A2_GRAM).elementary_divisors == (3,)
    assert discriminant_group(A4_GRAM).elementary_divisors == (5,)
    assert discriminant_group(E8_GRAM).order == 1
    assert discriminant_group([[2, 0], [0, 2]]).elementary_divisors == (2, 2)


def test_conformal_dimension_examples():
    assert conformal_dimension([[2]], [Fraction(1, 2)]) == Fraction(1, 4)
    assert conformal_dimension(A2_GRAM, [0, 0]) == 0
    for rep in discriminant_group(A2_GRAM).coset_reps.values():
        if any(rep):
            assert conformal_dimension(A2_GRAM, rep) == Fraction(1, 3)
    with pytest.raises(ValueError):
        conformal_dimension([[2]], [Fraction(1, 3)])


def test_fusion_datum_examples():
    d = fusion_datum_from_gram([[2]])
    assert (d.size, d.central_charge, d.conf_dim) == (2, 1, (0, Fraction(1, 4)))
    e8 = fusion_datum_from_gram(E8_GRAM)
    assert (e8.size, e8.central_charge, e8.conf_dim) == (1, 8, (0,))
    a2 = fusion_datum_from_gram(A2_GRAM)
    assert (a2.size, a2.central_charge) == (3, 2)
    assert a2.conf_dim == (0, Fraction(1, 3), Fraction(1, 3))


@pytest.mark.parametrize("seed", range(12))
def test_random_lattice_invariants(seed):
    G = random_even_lattice(np.random.default_rng(seed), max_det=40)
    disc = discriminant_group(G)
    assert disc.order == _det_fraction(G)
    assert disc.elements[0] == tuple(0 for _ in disc.elementary_divisors)
    assert not any(disc.coset_reps[disc.elements[0]])
    d = len(G)
    for x, rep in disc.coset_reps.items():
        assert all(0 <= v < 1 for v in rep)
        assert all(sum(G[i][j] * rep[j] for j in range(d)).denominator == 1 for i in range(d))
    datum = fusion_datum_from_gram(G)
    assert validate(datum) == []
    assert datum.size == disc.order and datum.central_charge == d
    for i in range(datum.size):
        assert datum.conf_dim[i] == datum.conf_dim[datum.dual[i]]
        assert datum.conf_dim[i] == cvp_min(G, disc.coset_reps[disc.elements[i]])


def test_cyclic_three_point_fusion(z5):
    for i in range(5):
        for j in range(5):
            for k in range(5):
                assert rank_exact(z5, 0, [i, j, k]) == int((i + j + k) % 5 == 0)
