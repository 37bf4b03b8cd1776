"""Ranks of bundles of coinvariants.

``rank_exact`` is the source of truth: genus is removed one handle at a time by
non-separating factorization, and genus-zero ranks are evaluated by iterated
fusion.  ``rank_semisimple`` evaluates the semisimple TQFT formula in floating
point and serves as an independent check.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fusion import FusionDatum, SemisimpleData, semisimple_decomposition

__all__ = [
    "RankReport",
    "RankTable",
    "rank_crosscheck",
    "rank_exact",
    "rank_semisimple",
    "rank_table",
]


def _check_query(datum: FusionDatum, g: int, modules: Sequence[int]) -> tuple[int, ...]:
    n = len(modules)
    if g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable rank query (g, n) = ({g}, {n})")
    mods = tuple(int(i) for i in modules)
    for i in mods:
        if not 0 <= i < datum.size:
            raise IndexError(f"module index {i} out of range")
    return mods


class RankTable:
    """Memoized exact ranks keyed by ``(g, sorted module multiset)``."""

    def __init__(self, datum: FusionDatum):
        self.datum = datum
        self.memo: dict[tuple[int, tuple[int, ...]], int] = {}
        self._fusion = datum.fusion.tolist()

    def __call__(self, g: int, modules: Sequence[int]) -> int:
        return self._rank(g, tuple(sorted(modules)))

    def _rank(self, g: int, key: tuple[int, ...]) -> int:
        hit = self.memo.get((g, key))
        if hit is not None:
            return hit
        dual = self.datum.dual
        N = self._fusion
        if g > 0:
            total = 0
            for w in range(self.datum.size):
                total += self._rank(g - 1, tuple(sorted(key + (w, dual[w]))))
        elif len(key) == 3:
            a, b, c = key
            total = N[a][b][c]
        else:
            # h_a * h_b = sum_k N(a, b, k') h_k, then fuse with the rest
            a, b, rest = key[0], key[1], key[2:]
            total = 0
            for k in range(self.datum.size):
                coeff = N[a][b][dual[k]]
                if coeff:
                    total += coeff * self._rank(0, tuple(sorted(rest + (k,))))
        self.memo[(g, key)] = total
        return total


_TABLES: "weakref.WeakKeyDictionary[FusionDatum, RankTable]" = weakref.WeakKeyDictionary()


def rank_table(datum: FusionDatum) -> RankTable:
    table = _TABLES.get(datum)
    if table is None:
        table = _TABLES[datum] = RankTable(datum)
    return table


def rank_exact(datum: FusionDatum, g: int, modules: Sequence[int]) -> int:
    """Exact rank of the bundle of coinvariants on the (g, n) moduli space."""
    mods = _check_query(datum, g, modules)
    return rank_table(datum)(g, mods)


_SEMISIMPLE: "weakref.WeakKeyDictionary[FusionDatum, SemisimpleData]" = weakref.WeakKeyDictionary()


def _semisimple(datum: FusionDatum) -> SemisimpleData:
    ss = _SEMISIMPLE.get(datum)
    if ss is None:
        ss = _SEMISIMPLE[datum] = semisimple_decomposition(datum)
    return ss


def rank_semisimple(
    datum: FusionDatum, g: int, modules: Sequence[int], ss: SemisimpleData | None = None
) -> float:
    """``sum_i lambda_i^(2g-2+n) prod_j e^i(h_{M_j})`` in floating point."""
    mods = _check_query(datum, g, modules)
    if ss is None:
        ss = _semisimple(datum)
    F = ss.dual_functional(datum)
    power = 2 * g - 2 + len(mods)
    terms = ss.values**power * np.prod(F[:, list(mods)], axis=1) if mods else ss.values**power
    return float(np.sum(terms).real)


@dataclass(frozen=True)
class RankReport:
    g: int
    modules: tuple[int, ...]
    exact: int
    semisimple: float
    tol: float

    @property
    def discrepancy(self) -> float:
        return abs(self.semisimple - self.exact)

    @property
    def ok(self) -> bool:
        return self.discrepancy <= self.tol


def rank_crosscheck(datum: FusionDatum, g: int, modules: Sequence[int], tol: float = 1e-6) -> RankReport:
    mods = _check_query(datum, g, modules)
    return RankReport(g, mods, rank_exact(datum, g, mods), rank_semisimple(datum, g, mods), tol)
