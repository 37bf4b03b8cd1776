"""Stable graphs: enumeration, canonical forms and automorphisms.

A graph is stored with vertices ``0..V-1``; leg ``i`` (1-based label) sits at
``legs[i-1]``; edge ``e`` joins half-edge ``(e, 0)`` at ``edges[e][0]`` to
half-edge ``(e, 1)`` at ``edges[e][1]``.  Isomorphisms fix leg labels and may
permute vertices, edges and the two half-edges of an edge.

Half-edges can carry integer decorations (psi exponents).  Canonical forms and
automorphism groups take them into account, which is what the tautological
class code needs to identify equal pushforwards.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "Canonical",
    "StableGraph",
    "aut_order",
    "automorphisms",
    "canonical_form",
    "canonicalize",
    "canonicalize_direct",
    "enumerate_graphs",
    "seed_graph_cache",
    "module_assignments",
    "smooth_graph",
]


@dataclass(frozen=True, order=True)
class StableGraph:
    genera: tuple[int, ...]
    legs: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def h1(self) -> int:
        return self.num_edges - self.num_vertices + 1

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.h1

    def is_smooth(self) -> bool:
        return not self.edges

    def valence(self, v: int) -> int:
        return self.legs.count(v) + sum((a == v) + (b == v) for a, b in self.edges)

    def half_edges_at(self, v: int) -> list[tuple[int, int]]:
        return [(e, s) for e, ends in enumerate(self.edges) for s in (0, 1) if ends[s] == v]

    def legs_at(self, v: int) -> list[int]:
        return [i + 1 for i, w in enumerate(self.legs) if w == v]

    def is_connected(self) -> bool:
        V = self.num_vertices
        seen = {0}
        stack = [0]
        adj: dict[int, set[int]] = {v: set() for v in range(V)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == V

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def check(self) -> None:
        """Raise ``ValueError`` unless this is a connected stable graph."""
        V = self.num_vertices
        if V == 0:
            raise ValueError("graph has no vertices")
        if any(g < 0 for g in self.genera):
            raise ValueError("negative genus label")
        if any(not 0 <= v < V for v in self.legs) or any(
            not (0 <= a < V and 0 <= b < V) for a, b in self.edges
        ):
            raise ValueError("leg or edge attached to a missing vertex")
        if not self.is_connected():
            raise ValueError("graph is not connected")
        if not self.is_stable():
            raise ValueError("graph has an unstable vertex")

    def relabel_legs(self, sigma: Sequence[int]) -> StableGraph:
        """Move leg ``i`` to label ``sigma[i-1]`` (1-based)."""
        legs = [0] * self.n
        for i, v in enumerate(self.legs):
            legs[sigma[i] - 1] = v
        return StableGraph(self.genera, tuple(legs), self.edges)

    def to_dict(self) -> dict:
        return {
            "vertices": [{"genus": g} for g in self.genera],
            "legs": [{"label": i + 1, "vertex": v} for i, v in enumerate(self.legs)],
            "edges": [[{"vertex": a}, {"vertex": b}] for a, b in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> StableGraph:
        genera = tuple(int(v["genus"]) for v in d["vertices"])
        legs_by_label = {int(leg["label"]): int(leg["vertex"]) for leg in d["legs"]}
        if sorted(legs_by_label) != list(range(1, len(legs_by_label) + 1)):
            raise ValueError("leg labels must be 1..n")
        legs = tuple(legs_by_label[i] for i in range(1, len(legs_by_label) + 1))
        edges = tuple((int(a["vertex"]), int(b["vertex"])) for a, b in d["edges"])
        return cls(genera, legs, edges)


def smooth_graph(g: int, n: int) -> StableGraph:
    return StableGraph((g,), (0,) * n, ())


Decoration = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Canonical:
    """Canonical representative of a (decorated) graph and its automorphism order."""

    graph: StableGraph
    decoration: Decoration
    aut: int

    @property
    def key(self) -> tuple:
        return (self.graph.genera, self.graph.legs, self.graph.edges, self.decoration)


def _refine(graph: StableGraph, deco: Decoration) -> list[int]:
    V = graph.num_vertices
    legs_at = [[] for _ in range(V)]
    for i, v in enumerate(graph.legs):
        legs_at[v].append(i + 1)
    loops = [[] for _ in range(V)]
    nbrs: list[list[tuple[int, int, int]]] = [[] for _ in range(V)]
    for (a, b), (p, q) in zip(graph.edges, deco):
        if a == b:
            loops[a].append(tuple(sorted((p, q))))
        else:
            nbrs[a].append((b, p, q))
            nbrs[b].append((a, q, p))
    sigs = [(graph.genera[v], tuple(legs_at[v]), tuple(sorted(loops[v])), len(nbrs[v])) for v in range(V)]
    ranks = _compress(sigs)
    while True:
        sigs = [
            (ranks[v], tuple(sorted((ranks[w], p, q) for w, p, q in nbrs[v])))
            for v in range(V)
        ]
        new = _compress(sigs)
        if len(set(new)) == len(set(ranks)):
            return new
        ranks = new


def _compress(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _encode(graph: StableGraph, deco: Decoration, pos: Sequence[int]):
    V = graph.num_vertices
    genera = [0] * V
    for v, g in enumerate(graph.genera):
        genera[pos[v]] = g
    legs = tuple(pos[v] for v in graph.legs)
    edges = sorted(
        tuple(sorted(((pos[a], p), (pos[b], q))))
        for (a, b), (p, q) in zip(graph.edges, deco)
    )
    return (tuple(genera), legs, tuple(edges))


def canonicalize(graph: StableGraph, decoration: Decoration | None = None) -> Canonical:
    """Canonical form of a graph with optional half-edge decorations.

    The undecorated graph is brought to canonical form first; the decoration
    is then transported along the canonical relabeling and replaced by the
    smallest decoration in its orbit under the automorphism group.
    """
    zero = ((0, 0),) * graph.num_edges
    if decoration is None or tuple(decoration) == zero:
        return _search(graph, zero)[0]
    return _canonicalize_decorated(graph, tuple(tuple(p) for p in decoration))


@lru_cache(maxsize=500_000)
def _canonicalize_decorated(graph: StableGraph, deco: Decoration) -> Canonical:
    base, pos = _search(graph, ((0, 0),) * graph.num_edges)
    canon = base.graph
    slots: dict[tuple[int, int], list[int]] = {}
    for e, ends in enumerate(canon.edges):
        slots.setdefault(ends, []).append(e)
    moved: list[tuple[int, int]] = [(0, 0)] * canon.num_edges
    for (a, b), (p, q) in zip(graph.edges, deco):
        x, y = pos[a], pos[b]
        if x > y:
            x, y, p, q = y, x, q, p
        moved[slots[(x, y)].pop(0)] = (p, q)
    best = None
    stab = 0
    for perm in automorphisms(canon):
        img: list[tuple[int, int]] = [(0, 0)] * canon.num_edges
        for e, (target, flip) in enumerate(perm):
            p, q = moved[e]
            img[target] = (q, p) if flip else (p, q)
        t = tuple(img)
        if best is None or t < best:
            best, stab = t, 1
        elif t == best:
            stab += 1
    return Canonical(canon, best, stab)


def canonicalize_direct(graph: StableGraph, decoration: Decoration | None = None) -> Canonical:
    """Minimum-encoding search run directly on the decorated graph.

    Produces the same isomorphism classes as :func:`canonicalize`, though the
    chosen representatives may differ; kept as an independent cross-check.
    """
    if decoration is None:
        decoration = ((0, 0),) * graph.num_edges
    return _search(graph, tuple(tuple(p) for p in decoration))[0]


def _orderings(graph: StableGraph, deco: Decoration):
    ranks = _refine(graph, deco)
    cells: dict[int, list[int]] = {}
    for v, r in enumerate(ranks):
        cells.setdefault(r, []).append(v)
    ordered = [cells[r] for r in sorted(cells)]
    base = []
    start = 0
    for cell in ordered:
        base.append(range(start, start + len(cell)))
        start += len(cell)
    for perms in itertools.product(*(itertools.permutations(b) for b in base)):
        pos = [0] * graph.num_vertices
        for cell, slots in zip(ordered, perms):
            for v, s in zip(cell, slots):
                pos[v] = s
        yield pos


@lru_cache(maxsize=200_000)
def _search(graph: StableGraph, deco: Decoration) -> tuple[Canonical, tuple[int, ...]]:
    """Minimize the encoding over vertex orderings inside refined color classes.

    Orderings reaching the minimum are exactly the vertex parts of
    automorphisms, which gives the automorphism order for free.
    """
    best = None
    best_pos = None
    count = 0
    for pos in _orderings(graph, deco):
        enc = _encode(graph, deco, pos)
        if best is None or enc < best:
            best, best_pos, count = enc, tuple(pos), 1
        elif enc == best:
            count += 1

    genera, legs, edges = best
    aut = count
    for _, mult in Counter(edges).items():
        aut *= math.factorial(mult)
    for (a, p), (b, q) in edges:
        if a == b and p == q:
            aut *= 2
    canon = StableGraph(genera, legs, tuple((a, b) for (a, _), (b, _) in edges))
    return Canonical(canon, tuple((p, q) for (_, p), (_, q) in edges), aut), best_pos


@lru_cache(maxsize=None)
def automorphisms(graph: StableGraph) -> tuple[tuple[tuple[int, bool], ...], ...]:
    """Automorphisms of an undecorated graph as edge maps ``e -> (e', flipped)``.

    ``flipped`` means half-edge ``(e, 0)`` goes to ``(e', 1)``.
    """
    zero = ((0, 0),) * graph.num_edges
    own = _encode(graph, zero, range(graph.num_vertices))
    classes: dict[tuple[int, int], list[int]] = {}
    for e, (a, b) in enumerate(graph.edges):
        classes.setdefault((min(a, b), max(a, b)), []).append(e)
    out = []
    for pos in _orderings(graph, zero):
        if _encode(graph, zero, pos) != own:
            continue
        per_class = []
        for (a, b), src in classes.items():
            x, y = pos[a], pos[b]
            flip = x > y
            dst = classes[(min(x, y), max(x, y))]
            options = []
            for tgt in itertools.permutations(dst):
                if a == b:
                    for flips in itertools.product((False, True), repeat=len(src)):
                        options.append(tuple(zip(src, tgt, flips)))
                else:
                    options.append(tuple((e, t, flip) for e, t in zip(src, tgt)))
            per_class.append(options)
        for combo in itertools.product(*per_class):
            perm = [None] * graph.num_edges
            for part in combo:
                for e, t, f in part:
                    perm[e] = (t, f)
            out.append(tuple(perm))
    return tuple(out)


def canonical_form(graph: StableGraph) -> bytes:
    """Byte encoding shared by exactly the isomorphic graphs."""
    c = canonicalize(graph).graph
    return json.dumps([c.genera, c.legs, c.edges], separators=(",", ":")).encode()


def aut_order(graph: StableGraph) -> int:
    return canonicalize(graph).aut


def _genus_partitions(total: int, parts: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of ``parts`` nonnegative integers summing to ``total``."""
    if cap is None:
        cap = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap), -1, -1):
        if first * parts < total:
            break
        for rest in _genus_partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _edge_multisets(
    V: int, E: int, caps: Sequence[int]
) -> Iterator[tuple[tuple[int, int], ...]]:
    pairs = [(i, j) for i in range(V) for j in range(i, V)]
    deg = [0] * V
    chosen: list[tuple[int, int]] = []

    def rec(k: int, left: int):
        if left == 0:
            yield tuple(chosen)
            return
        if k == len(pairs):
            return
        i, j = pairs[k]
        yield from rec(k + 1, left)
        added = 0
        while added < left:
            di = 2 if i == j else 1
            if deg[i] + di > caps[i] or (i != j and deg[j] + 1 > caps[j]):
                break
            deg[i] += di
            if i != j:
                deg[j] += 1
            chosen.append((i, j))
            added += 1
            yield from rec(k + 1, left - added)
        for _ in range(added):
            chosen.pop()
            deg[i] -= 2 if i == j else 1
            if i != j:
                deg[j] -= 1

    yield from rec(0, E)


def _min_valence(g: int) -> int:
    return max(0, 3 - 2 * g)


GraphList = tuple[tuple[StableGraph, int], ...]

# write-once per key; a full list for (g, n) also serves every edge bound
_ENUMERATED: dict[tuple[int, int, int | None], GraphList] = {}


def seed_graph_cache(g: int, n: int, graphs: GraphList) -> None:
    """Install a previously computed full enumeration for ``(g, n)``."""
    _ENUMERATED.setdefault((g, n, None), tuple(graphs))


def enumerate_graphs(g: int, n: int, max_edges: int | None = None) -> GraphList:
    """One canonical representative per isomorphism class of stable graphs.

    Returns ``(graph, aut_order)`` pairs sorted by edge count and canonical
    encoding.  ``max_edges`` restricts to graphs with at most that many edges.
    """
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is not stable")
    if max_edges is not None and max_edges >= 3 * g - 3 + n:
        max_edges = None
    key = (g, n, max_edges)
    if key in _ENUMERATED:
        return _ENUMERATED[key]
    full = _ENUMERATED.get((g, n, None))
    if full is not None:
        result = tuple(x for x in full if x[0].num_edges <= max_edges)
    else:
        result = _enumerate(g, n, max_edges)
    _ENUMERATED.setdefault(key, result)
    return _ENUMERATED[key]


def _enumerate(g: int, n: int, max_edges: int | None) -> GraphList:
    found: dict[tuple, Canonical] = {}
    max_vertices = 2 * g - 2 + n
    for V in range(1, max_vertices + 1):
        for h1 in range(0, g + 1):
            E = h1 + V - 1
            if max_edges is not None and E > max_edges:
                continue
            for genera in _genus_partitions(g - h1, V):
                total = 2 * E + n
                mins = [_min_valence(gv) for gv in genera]
                if sum(mins) > total:
                    continue
                caps = [total - (sum(mins) - mv) for mv in mins]
                shapes: set[tuple] = set()
                for edges in _edge_multisets(V, E, caps):
                    deg = [0] * V
                    for a, b in edges:
                        deg[a] += 1
                        deg[b] += 1
                    deficit = sum(max(0, mv - d) for mv, d in zip(mins, deg))
                    if deficit > n:
                        continue
                    shape = StableGraph(genera, (), edges)
                    if V > 1 and not shape.is_connected():
                        continue
                    cs = canonicalize(shape).graph
                    if cs in shapes:
                        continue
                    shapes.add(cs)
                    for legs in itertools.product(range(V), repeat=n):
                        gr = StableGraph(cs.genera, legs, cs.edges)
                        if not gr.is_stable():
                            continue
                        c = canonicalize(gr)
                        found.setdefault(c.key, c)
    out = sorted(found.values(), key=lambda c: (c.graph.num_edges, c.key))
    return tuple((c.graph, c.aut) for c in out)


def module_assignments(graph: StableGraph, datum) -> Iterator[tuple[tuple[int, int], ...]]:
    """All assignments ``mu`` with ``mu(h') = dual(mu(h))`` on every edge.

    Yields, per edge, the module indices on half-edges ``(e, 0)`` and ``(e, 1)``.
    """
    dual = datum.dual
    for choice in itertools.product(range(datum.size), repeat=graph.num_edges):
        yield tuple((w, dual[w]) for w in choice)
