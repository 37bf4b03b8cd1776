"""Formal tautological classes on the moduli space of stable curves.

A class is a finite rational combination of decorated strata: a stable graph
together with a power of lambda, psi exponents on legs and psi exponents on
half-edges.  Classes live in the free module on these generators; no
tautological relations are imposed.  Half-edge decorations are canonicalized
up to graph automorphisms, so pushforwards that agree as classes are stored as
the same generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graphs import Decoration, StableGraph, canonicalize, smooth_graph

__all__ = ["Generator", "TautClass", "make_generator", "pushforward_term", "smooth_monomial"]


@dataclass(frozen=True)
class Generator:
    graph: StableGraph
    lambda_exp: int
    psi_legs: tuple[int, ...]
    psi_half_edges: Decoration
    degree: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        deg = (
            self.lambda_exp
            + sum(self.psi_legs)
            + sum(p + q for p, q in self.psi_half_edges)
            + len(self.graph.edges)
        )
        object.__setattr__(self, "degree", deg)

    def sort_key(self) -> tuple:
        gr = self.graph
        return (
            gr.num_edges,
            gr.genera,
            gr.legs,
            gr.edges,
            self.psi_half_edges,
            self.lambda_exp,
            self.psi_legs,
        )

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_exp,
            "graph": self.graph.to_dict(),
            "psi_legs": {str(i + 1): k for i, k in enumerate(self.psi_legs) if k},
            "psi_half_edges": {
                f"{e}:{s}": k
                for e, pair in enumerate(self.psi_half_edges)
                for s, k in enumerate(pair)
                if k
            },
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> Generator:
        graph = StableGraph.from_dict(d["graph"])
        psi_legs = [0] * graph.n
        for k, v in d.get("psi_legs", {}).items():
            psi_legs[int(k) - 1] = int(v)
        deco = [[0, 0] for _ in range(graph.num_edges)]
        for k, v in d.get("psi_half_edges", {}).items():
            e, s = (int(t) for t in k.split(":"))
            deco[e][s] = int(v)
        return make_generator(graph, int(d.get("lambda", 0)), psi_legs, [tuple(p) for p in deco])

    def __str__(self) -> str:
        parts = []
        if self.lambda_exp:
            parts.append("lambda" + (f"^{self.lambda_exp}" if self.lambda_exp > 1 else ""))
        for i, k in enumerate(self.psi_legs):
            if k:
                parts.append(f"psi{i + 1}" + (f"^{k}" if k > 1 else ""))
        for e, (p, q) in enumerate(self.psi_half_edges):
            for s, k in ((0, p), (1, q)):
                if k:
                    parts.append(f"psi[{e}:{s}]" + (f"^{k}" if k > 1 else ""))
        mono = "*".join(parts) if parts else "1"
        gr = self.graph
        if gr.is_smooth():
            return f"{mono}"
        return f"[{mono} on G(genera={list(gr.genera)}, legs={list(gr.legs)}, edges={list(gr.edges)})]"


def make_generator(
    graph: StableGraph,
    lambda_exp: int = 0,
    psi_legs: Sequence[int] | None = None,
    psi_half_edges: Sequence[tuple[int, int]] | None = None,
) -> Generator:
    """Build a generator in canonical form."""
    if psi_legs is None:
        psi_legs = (0,) * graph.n
    if len(psi_legs) != graph.n:
        raise ValueError("psi_legs needs one exponent per leg")
    if psi_half_edges is None:
        psi_half_edges = ((0, 0),) * graph.num_edges
    if len(psi_half_edges) != graph.num_edges:
        raise ValueError("psi_half_edges needs one exponent pair per edge")
    if lambda_exp < 0 or min(psi_legs, default=0) < 0 or any(min(p) < 0 for p in psi_half_edges):
        raise ValueError("exponents must be nonnegative")
    c = canonicalize(graph, tuple(tuple(p) for p in psi_half_edges))
    return Generator(c.graph, int(lambda_exp), tuple(int(k) for k in psi_legs), c.decoration)


class TautClass:
    """Rational linear combination of generators, truncated at ``max_degree``."""

    __slots__ = ("g", "n", "max_degree", "terms")

    def __init__(self, g: int, n: int, max_degree: int, terms: Mapping[Generator, Fraction] | None = None):
        self.g = g
        self.n = n
        self.max_degree = max_degree
        self.terms: dict[Generator, Fraction] = {}
        for gen, c in (terms or {}).items():
            self._accumulate(gen, Fraction(c))

    def _accumulate(self, gen: Generator, c: Fraction) -> None:
        if gen.degree > self.max_degree:
            raise ValueError(f"generator of degree {gen.degree} exceeds truncation {self.max_degree}")
        if gen.graph.genus != self.g or gen.graph.n != self.n:
            raise ValueError("generator lives on a different moduli space")
        self._merge(gen, c)

    def _merge(self, gen: Generator, c: Fraction) -> None:
        # unchecked; callers guarantee degree and moduli space
        old = self.terms.get(gen)
        new = c if old is None else old + c
        if new:
            self.terms[gen] = new
        else:
            del self.terms[gen]

    @classmethod
    def zero(cls, g: int, n: int, max_degree: int) -> TautClass:
        return cls(g, n, max_degree)

    @classmethod
    def from_terms(cls, g: int, n: int, max_degree: int, items: Iterable[tuple[Generator, Fraction]]) -> TautClass:
        out = cls(g, n, max_degree)
        for gen, c in items:
            out._accumulate(gen, Fraction(c))
        return out

    def _same_space(self, other: TautClass) -> None:
        if (self.g, self.n) != (other.g, other.n):
            raise ValueError(f"cannot combine classes on M({self.g},{self.n}) and M({other.g},{other.n})")

    def __add__(self, other: TautClass) -> TautClass:
        self._same_space(other)
        out = TautClass(self.g, self.n, max(self.max_degree, other.max_degree))
        out.terms = dict(self.terms)
        for gen, c in other.terms.items():
            out._merge(gen, c)
        return out

    def __neg__(self) -> TautClass:
        return self.scale(-1)

    def __sub__(self, other: TautClass) -> TautClass:
        return self + (-other)

    def scale(self, q) -> TautClass:
        q = Fraction(q)
        if not q:
            return TautClass(self.g, self.n, self.max_degree)
        out = TautClass(self.g, self.n, self.max_degree)
        out.terms = {k: q * c for k, c in self.terms.items()}
        return out

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, TautClass):
            return NotImplemented
        return (self.g, self.n) == (other.g, other.n) and self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _filtered(self, keep, max_degree: int | None = None) -> TautClass:
        D = self.max_degree if max_degree is None else max_degree
        out = TautClass(self.g, self.n, D)
        out.terms = {k: c for k, c in self.terms.items() if keep(k)}
        return out

    def truncate(self, D: int) -> TautClass:
        return self._filtered(lambda k: k.degree <= D, min(D, self.max_degree))

    def degree_part(self, d: int) -> TautClass:
        return self._filtered(lambda k: k.degree == d)

    def restrict_to_smooth(self) -> TautClass:
        """Drop every generator supported on a boundary stratum."""
        return self._filtered(lambda k: k.graph.is_smooth())

    def scale_by_lambda_exponential(self, c_over_2) -> TautClass:
        """Multiply by ``exp(c_over_2 * lambda)``, truncated at ``max_degree``."""
        c_over_2 = Fraction(c_over_2)
        out = TautClass(self.g, self.n, self.max_degree)
        if not c_over_2:
            out.terms = dict(self.terms)
            return out
        series = [c_over_2**k / math.factorial(k) for k in range(self.max_degree + 1)]
        for gen, c in self.terms.items():
            out._merge(gen, c)
            for k in range(1, self.max_degree - gen.degree + 1):
                shifted = Generator(gen.graph, gen.lambda_exp + k, gen.psi_legs, gen.psi_half_edges)
                out._merge(shifted, c * series[k])
        return out

    def sorted_terms(self) -> list[tuple[Generator, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self) -> list[dict]:
        return [{"coefficient": str(c), **gen.to_dict()} for gen, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, g: int, n: int, max_degree: int, data: Iterable[Mapping]) -> TautClass:
        return cls.from_terms(
            g, n, max_degree, ((Generator.from_dict(d), Fraction(d["coefficient"])) for d in data)
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for gen, c in self.sorted_terms():
            g = str(gen)
            if g == "1":
                chunks.append(str(c))
            elif c == 1:
                chunks.append(g)
            elif c == -1:
                chunks.append(f"-{g}")
            else:
                chunks.append(f"{c} {g}")
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TautClass(g={self.g}, n={self.n}, D={self.max_degree}, terms={len(self.terms)})"


def pushforward_term(
    graph: StableGraph,
    psi_legs: Sequence[int],
    psi_half_edges: Sequence[tuple[int, int]],
    coefficient,
    max_degree: int,
    lambda_exp: int = 0,
) -> TautClass:
    """Single-term class ``coefficient * (xi_G)_*(monomial)``.

    The coefficient must already include any ``1/|Aut(G)|`` factor.
    """
    gen = make_generator(graph, lambda_exp, psi_legs, psi_half_edges)
    if gen.degree > max_degree:
        raise ValueError(f"term of degree {gen.degree} exceeds the bound {max_degree}; use truncate")
    out = TautClass(graph.genus, graph.n, max_degree)
    coefficient = Fraction(coefficient)
    if coefficient:
        out._accumulate(gen, coefficient)
    return out


def smooth_monomial(g: int, n: int, max_degree: int, lambda_exp: int = 0, psi_legs: Sequence[int] | None = None, coefficient=1) -> TautClass:
    """``coefficient * lambda^k * prod psi_i^{e_i}`` on the open stratum."""
    return pushforward_term(smooth_graph(g, n), psi_legs or (0,) * n, (), coefficient, max_degree, lambda_exp)
