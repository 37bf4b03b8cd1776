"""Fusion data of even lattice vertex algebras.

For a positive-definite even lattice ``L`` with Gram matrix ``G`` the simple
modules are indexed by the discriminant group ``L'/L``; fusion is the group
law, the contragredient is negation, the central charge is the rank and the
conformal dimension of ``V_{L+lam}`` is ``min_{alpha in L} (lam+alpha, lam+alpha)/2``.

Coordinates are always taken with respect to the fixed lattice basis, so a
vector ``x`` has norm ``x^T G x``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fusion import FusionDatum, Violation, group_datum

__all__ = [
    "DiscriminantData",
    "InvalidLatticeError",
    "conformal_dimension",
    "discriminant_group",
    "fusion_datum_from_gram",
    "smith_normal_form",
    "validate_gram",
]

E8_GRAM = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
]

A2_GRAM = [[2, -1], [-1, 2]]


class InvalidLatticeError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("invalid Gram matrix: " + "; ".join(str(v) for v in violations))


def _int_matrix(gram) -> list[list[int]]:
    rows = [list(r) for r in gram]
    out = []
    for r in rows:
        row = []
        for x in r:
            if isinstance(x, float) and not x.is_integer():
                raise InvalidLatticeError([Violation("integrality", (), f"entry {x!r}")])
            row.append(int(x))
        out.append(row)
    return out


def _det(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def validate_gram(gram) -> list[Violation]:
    """Check symmetry, evenness and positive definiteness of a Gram matrix."""
    try:
        G = _int_matrix(gram)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidLatticeError):
            return exc.violations
        return [Violation("integrality", (), str(exc))]
    d = len(G)
    if d == 0 or any(len(r) != d for r in G):
        return [Violation("square", (), "Gram matrix must be a nonempty square matrix")]
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            if G[i][j] != G[j][i]:
                out.append(Violation("symmetry", (i, j)))
    for i in range(d):
        if G[i][i] % 2:
            out.append(Violation("even", (i,), f"diagonal entry {G[i][i]} is odd"))
    for k in range(1, d + 1):
        minor = _det([row[:k] for row in G[:k]])
        if minor <= 0:
            out.append(Violation("positive-definite", (k,), f"leading minor of size {k} is {minor}"))
            break
    return out


def _check(gram) -> list[list[int]]:
    report = validate_gram(gram)
    if report:
        raise InvalidLatticeError(report)
    return _int_matrix(gram)


def smith_normal_form(A) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``S = U A V`` of a square integer matrix.

    ``U`` and ``V`` are unimodular and the diagonal of ``S`` is nonnegative with
    each entry dividing the next.  Arithmetic uses Python integers.
    """
    S = [list(map(int, r)) for r in A]
    n = len(S)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, q):  # row dst -= q * row src
        M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, q):  # col dst -= q * col src
        for row in M:
            row[dst] -= q * row[src]

    for t in range(n):
        while True:
            nz = [(abs(S[i][j]), i, j) for i in range(t, n) for j in range(t, n) if S[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(S, t, pi)
            swap_rows(U, t, pi)
            swap_cols(S, t, pj)
            swap_cols(V, t, pj)
            done = True
            for i in range(t + 1, n):
                q = S[i][t] // S[t][t]
                add_row(S, t, i, q)
                add_row(U, t, i, q)
                if S[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = S[t][j] // S[t][t]
                add_col(S, t, j, q)
                add_col(V, t, j, q)
                if S[t][j]:
                    done = False
            if not done:
                continue
            # divisibility: fold an offending row into row t
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(S, bad, t, -1)
            add_row(U, bad, t, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return (np.array(S, dtype=object), np.array(U, dtype=object), np.array(V, dtype=object))


def _inverse(G: list[list[int]]) -> list[list[Fraction]]:
    d = len(G)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)] for i, row in enumerate(G)]
    for c in range(d):
        p = next(r for r in range(c, d) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(d):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[d:] for row in a]


@dataclass(frozen=True)
class DiscriminantData:
    """The discriminant group ``L'/L`` with canonical coset representatives.

    ``elements`` lists group elements as coordinate tuples (one coordinate per
    elementary divisor) with the zero element first; ``coset_reps[x]`` is a
    vector of ``L'`` in lattice-basis coordinates, each in ``[0, 1)``.
    """

    gram: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]
    coset_reps: dict

    @property
    def order(self) -> int:
        return math.prod(self.elementary_divisors)

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.elementary_divisors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.elementary_divisors))

    def label(self, x) -> str:
        return ":".join(str(a) for a in x) if x else "0"


def discriminant_group(gram) -> DiscriminantData:
    """Compute ``L'/L`` via the Smith normal form of the Gram matrix."""
    G = _check(gram)
    d = len(G)
    S, U, _ = smith_normal_form(G)
    diag = [int(S[i, i]) for i in range(d)]
    keep = [i for i in range(d) if diag[i] > 1]
    divisors = tuple(diag[i] for i in keep)
    Uinv = _inverse([[int(x) for x in row] for row in U])
    Ginv = _inverse(G)

    elements = tuple(itertools.product(*(range(k) for k in divisors)))
    reps = {}
    for x in elements:
        full = [0] * d
        for pos, i in enumerate(keep):
            full[i] = x[pos]
        y = [sum(Uinv[r][c] * full[c] for c in range(d)) for r in range(d)]
        lam = [sum(Ginv[r][c] * y[c] for c in range(d)) for r in range(d)]
        reps[x] = tuple(v - math.floor(v) for v in lam)
    return DiscriminantData(tuple(tuple(r) for r in G), divisors, elements, reps)


def _ldl(G: list[list[int]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact ``G = L diag(D) L^T`` with unit lower-triangular ``L``."""
    d = len(G)
    L = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    D = [Fraction(0)] * d
    for j in range(d):
        D[j] = Fraction(G[j][j]) - sum((L[j][k] ** 2 * D[k] for k in range(j)), Fraction(0))
        for i in range(j + 1, d):
            L[i][j] = (G[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def norm(gram, x: Sequence) -> Fraction:
    """``x^T G x`` in exact arithmetic."""
    d = len(x)
    return sum((Fraction(gram[i][j]) * x[i] * x[j] for i in range(d) for j in range(d)), Fraction(0))


def _int_window(center: Fraction, radius_sq: Fraction) -> range:
    """Integers ``t`` possibly satisfying ``(t - center)^2 <= radius_sq`` (superset)."""
    r = math.sqrt(float(radius_sq)) if radius_sq > 0 else 0.0
    lo = math.floor(float(center) - r) - 1
    hi = math.ceil(float(center) + r) + 1
    return range(lo, hi + 1)


def conformal_dimension(gram, coset_rep: Sequence) -> Fraction:
    """Exact ``min_{alpha in L} (lam + alpha, lam + alpha) / 2``.

    Fincke-Pohst enumeration on the exact LDL^T factorization: every
    coordinate window is a superset of the true admissible interval and each
    candidate is re-checked with rational arithmetic, so no minimizer is lost.
    """
    G = _check(gram)
    d = len(G)
    lam = [Fraction(v) for v in coset_rep]
    if len(lam) != d:
        raise ValueError("coset representative has the wrong dimension")
    for j in range(d):
        if sum(G[j][k] * lam[k] for k in range(d)).denominator != 1:
            raise ValueError("vector is not in the dual lattice")
    lam = [v - math.floor(v) for v in lam]
    L, D = _ldl(G)
    best = norm(G, lam)

    x = [Fraction(0)] * d

    def search(i: int, partial: Fraction) -> None:
        nonlocal best
        if i < 0:
            if partial < best:
                best = partial
            return
        shift = sum((L[j][i] * x[j] for j in range(i + 1, d)), Fraction(0))
        remaining = best - partial
        if remaining < 0:
            return
        # (lam_i + alpha + shift)^2 * D_i <= remaining
        for alpha in _int_window(-shift - lam[i], remaining / D[i]):
            xi = lam[i] + alpha
            term = D[i] * (xi + shift) ** 2
            if partial + term <= best:
                x[i] = xi
                search(i - 1, partial + term)
        x[i] = Fraction(0)

    search(d - 1, Fraction(0))
    return best / 2


def fusion_datum_from_gram(gram) -> FusionDatum:
    """Fusion datum of the lattice vertex algebra ``V_L``."""
    disc = discriminant_group(gram)
    G = [list(r) for r in disc.gram]
    elements = list(disc.elements)
    pos = {x: i for i, x in enumerate(elements)}
    conf = [conformal_dimension(G, disc.coset_reps[x]) for x in elements]
    try:
        return group_datum(
            [disc.label(x) for x in elements],
            lambda i, j: pos[disc.add(elements[i], elements[j])],
            lambda i: pos[disc.neg(elements[i])],
            0,
            conf,
            len(G),
        )
    except ValueError as exc:  # pragma: no cover - would be an internal bug
        raise RuntimeError(f"lattice datum failed validation: {exc}") from exc
