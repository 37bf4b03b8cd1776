"""Chern characters of bundles of coinvariants as formal tautological classes.

The total Chern character is the stable-graph sum

    exp(c/2 lambda) * sum_{G, mu} 1/|Aut G| (xi_G)_*( prod_i exp(a_i psi_i)
                                    * prod_v rank(v) * prod_e edge(e) )

with ``edge(e) = (1 - exp(a (psi_h + psi_h'))) / (psi_h + psi_h')``.  The
first Chern class also has a closed form in terms of boundary divisors, which
is computed independently and compared against the degree-one part.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .fusion import FusionDatum
from .graphs import StableGraph, canonicalize, enumerate_graphs
from .ranks import rank_exact, rank_table
from .taut import Generator, TautClass, make_generator, smooth_monomial

__all__ = [
    "EdgeSeries",
    "chern_character",
    "chern_smooth",
    "edge_series",
    "first_chern_closed_form",
    "first_chern_from_character",
    "moduli_dimension",
    "total_chern_smooth",
]


def moduli_dimension(g: int, n: int) -> int:
    return 3 * g - 3 + n


def _check(datum: FusionDatum, g: int, modules: Sequence[int], D: int | None) -> int:
    n = len(modules)
    if g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is not stable")
    for i in modules:
        if not 0 <= i < datum.size:
            raise IndexError(f"module index {i} out of range")
    dim = moduli_dimension(g, n)
    if D is None:
        return dim
    if D < 0:
        raise ValueError("truncation degree must be nonnegative")
    if D > dim:
        raise ValueError(f"degree {D} exceeds the dimension {dim} of the moduli space")
    return D


@dataclass(frozen=True)
class EdgeSeries:
    """Coefficients of ``psi_h^i psi_h'^j`` in the edge contribution, ``i + j <= D``."""

    a: Fraction
    max_degree: int
    coefficients: dict

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.coefficients.get(ij, Fraction(0))


def edge_series(a, D: int) -> EdgeSeries:
    a = Fraction(a)
    coeffs = {}
    for k in range(D + 1):
        base = -(a ** (k + 1)) / math.factorial(k + 1)
        for i in range(k + 1):
            c = base * math.comb(k, i)
            if c:
                coeffs[(i, k - i)] = c
    return EdgeSeries(a, D, coeffs)


def _exp_series(a: Fraction, D: int) -> list[Fraction]:
    return [a**k / math.factorial(k) for k in range(D + 1)]


@lru_cache(maxsize=4096)
def _psi_expansion(
    leg_dims: tuple[Fraction, ...], edge_dims: tuple[Fraction, ...], budget: int
) -> tuple[tuple[tuple[int, ...], tuple[tuple[int, int], ...], Fraction], ...]:
    """Expand ``prod exp(a_i psi_i) prod edge(a_e)`` up to total degree ``budget``.

    Returns ``(leg exponents, half-edge exponent pairs, coefficient)`` triples.
    """
    poly: dict[tuple, Fraction] = {((), ()): Fraction(1)}
    for a in leg_dims:
        series = _exp_series(a, budget) if a else [Fraction(1)]
        nxt: dict[tuple, Fraction] = defaultdict(Fraction)
        for (legs, hes), c in poly.items():
            used = sum(legs) + sum(p + q for p, q in hes)
            for k, s in enumerate(series[: budget - used + 1]):
                if s:
                    nxt[(legs + (k,), hes)] += c * s
        poly = nxt
    for a in edge_dims:
        es = edge_series(a, budget)
        nxt = defaultdict(Fraction)
        for (legs, hes), c in poly.items():
            used = sum(legs) + sum(p + q for p, q in hes)
            for (i, j), s in es.coefficients.items():
                if i + j <= budget - used:
                    nxt[(legs, hes + ((i, j),))] += c * s
        poly = nxt
    return tuple((legs, hes, c) for (legs, hes), c in poly.items() if c)


def _vertex_layout(graph: StableGraph, modules: Sequence[int]):
    layout = []
    for v, gv in enumerate(graph.genera):
        leg_mods = tuple(modules[i - 1] for i in graph.legs_at(v))
        layout.append((gv, leg_mods, graph.half_edges_at(v)))
    return layout


def chern_character(
    datum: FusionDatum, g: int, modules: Sequence[int], D: int | None = None
) -> TautClass:
    """The stable-graph polynomial for the Chern character, truncated at degree ``D``."""
    D = _check(datum, g, modules, D)
    modules = tuple(modules)
    n = len(modules)
    ranks = rank_table(datum)
    dual = datum.dual
    conf = datum.conf_dim
    leg_dims = tuple(conf[i] for i in modules)
    # an edge through a module of conformal dimension 0 contributes 0
    live = [w for w in range(datum.size) if conf[w] != 0]

    out = TautClass(g, n, D)
    for graph, aut in enumerate_graphs(g, n, D):
        E = graph.num_edges
        layout = _vertex_layout(graph, modules)
        weights: dict[tuple[Fraction, ...], int] = defaultdict(int)
        for choice in itertools.product(live, repeat=E):
            prod = 1
            for gv, leg_mods, hes in layout:
                mods = leg_mods + tuple(choice[e] if s == 0 else dual[choice[e]] for e, s in hes)
                prod *= ranks(gv, mods)
                if not prod:
                    break
            if prod:
                weights[tuple(conf[w] for w in choice)] += prod
        for edge_dims, weight in sorted(weights.items()):
            if not weight:
                continue
            scale = Fraction(weight, aut)
            for legs, hes, c in _psi_expansion(leg_dims, edge_dims, D - E):
                canon = canonicalize(graph, hes)
                out._merge(Generator(canon.graph, 0, legs, canon.decoration), scale * c)
    return out.scale_by_lambda_exponential(datum.central_charge / 2)


def _smooth_class(g: int, n: int, D: int, coeff_of) -> TautClass:
    """Sum over smooth monomials ``lambda^k prod psi_i^{e_i}`` of total degree <= D."""
    out = TautClass(g, n, D)
    base = make_generator(StableGraph((g,), (0,) * n, ()))
    for total in range(D + 1):
        for exps in _compositions(total, n + 1):
            c = coeff_of(exps)
            if c:
                gen = Generator(base.graph, exps[0], tuple(exps[1:]), ())
                out._accumulate(gen, c)
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def chern_smooth(datum: FusionDatum, g: int, modules: Sequence[int], D: int | None = None) -> TautClass:
    """``rank * exp(c/2 lambda + sum a_i psi_i)`` on the smooth locus."""
    D = _check(datum, g, modules, D)
    rank = rank_exact(datum, g, modules)
    weights = [datum.central_charge / 2] + [datum.conf_dim[i] for i in modules]

    def coeff(exps):
        c = Fraction(rank)
        for w, k in zip(weights, exps):
            c *= w**k / math.factorial(k)
        return c

    return _smooth_class(g, len(modules), D, coeff)


def total_chern_smooth(datum: FusionDatum, g: int, modules: Sequence[int], D: int | None = None) -> TautClass:
    """``(1 + c/2 lambda + sum a_i psi_i)^rank`` on the smooth locus."""
    D = _check(datum, g, modules, D)
    rank = rank_exact(datum, g, modules)
    weights = [datum.central_charge / 2] + [datum.conf_dim[i] for i in modules]

    def coeff(exps):
        k = sum(exps)
        # binom(rank, k) * multinomial(k; exps) * prod w^e
        c = Fraction(math.comb(rank, k) * math.factorial(k))
        for w, e in zip(weights, exps):
            c *= w**e / math.factorial(e)
        return c

    return _smooth_class(g, len(modules), D, coeff)


def _separating_sides(g: int, n: int):
    """Representatives ``(i, I)`` of separating boundary divisors.

    ``(i, I)`` and ``(g - i, I^c)`` name the same divisor; the representative has
    the smaller genus, and on ties the side containing leg 1.
    """
    legs = range(1, n + 1)
    for i in range(g // 2 + 1):
        for size in range(n + 1):
            for I in itertools.combinations(legs, size):
                Ic = tuple(j for j in legs if j not in I)
                if 2 * i - 2 + len(I) + 1 <= 0 or 2 * (g - i) - 2 + len(Ic) + 1 <= 0:
                    continue
                if 2 * i == g:
                    if n >= 1 and 1 not in I:
                        continue
                    if n == 0 and I > Ic:
                        continue
                yield i, I, Ic


def first_chern_closed_form(datum: FusionDatum, g: int, modules: Sequence[int]) -> TautClass:
    """Closed-form ``c_1`` in terms of lambda, psi and boundary divisors.

    Boundary divisors are normalized as ``delta = (1/|Aut G|) (xi_G)_*(1)``.
    On a zero-dimensional moduli space the result is the zero class.
    """
    _check(datum, g, modules, None)
    modules = tuple(modules)
    n = len(modules)
    if moduli_dimension(g, n) == 0:
        return TautClass(g, n, 0)
    rank = rank_exact(datum, g, modules)
    conf = datum.conf_dim
    dual = datum.dual
    W = range(datum.size)

    out = smooth_monomial(g, n, 1, lambda_exp=1, coefficient=rank * datum.central_charge / 2)
    for i, m in enumerate(modules):
        psi = [0] * n
        psi[i] = 1
        out = out + smooth_monomial(g, n, 1, psi_legs=psi, coefficient=rank * conf[m])

    if g >= 1:
        b_irr = sum(conf[w] * rank_exact(datum, g - 1, modules + (w, dual[w])) for w in W)
        irr = canonicalize(StableGraph((g - 1,), (0,) * n, ((0, 0),)))
        out = out + _boundary(irr.graph, -Fraction(b_irr) / irr.aut)

    for i, I, Ic in _separating_sides(g, n):
        mI = tuple(modules[j - 1] for j in I)
        mIc = tuple(modules[j - 1] for j in Ic)
        b = sum(
            conf[w] * rank_exact(datum, i, mI + (w,)) * rank_exact(datum, g - i, mIc + (dual[w],))
            for w in W
        )
        legs = tuple(0 if j in I else 1 for j in range(1, n + 1))
        sep = canonicalize(StableGraph((i, g - i), legs, ((0, 1),)))
        out = out + _boundary(sep.graph, -Fraction(b) / sep.aut)
    return out


def _boundary(graph: StableGraph, coefficient: Fraction) -> TautClass:
    out = TautClass(graph.genus, graph.n, 1)
    if coefficient:
        out._accumulate(make_generator(graph), coefficient)
    return out


def first_chern_from_character(datum: FusionDatum, g: int, modules: Sequence[int]) -> TautClass:
    """Degree-one part of :func:`chern_character`."""
    dim = moduli_dimension(g, len(modules))
    return chern_character(datum, g, modules, min(1, dim)).degree_part(1)
