"""JSON documents for fusion data, lattices, graph lists, rank tables and classes.

Rationals are written as exact strings (``"1/4"``, ``"3"``).  Every writer
produces sorted keys and a fixed separator layout so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from .fusion import FusionDatum, StructuralError
from .graphs import GraphList, StableGraph
from .ranks import RankTable

__all__ = [
    "ParseError",
    "datum_from_dict",
    "datum_hash",
    "datum_to_dict",
    "dumps",
    "gram_from_dict",
    "graphs_from_json",
    "graphs_to_json",
    "load_document",
    "rank_table_from_json",
    "rank_table_to_json",
]


class ParseError(ValueError):
    """A document could not be read or does not follow its schema."""


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def load_document(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _rational(s, what: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"{what} must be an exact rational string like '1/4', got {s!r}")
    try:
        if isinstance(s, str) and ("." in s or "e" in s.lower()):
            raise ValueError
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what}: {s!r} is not an exact rational") from None


def datum_to_dict(datum: FusionDatum) -> dict:
    labels = datum.modules
    entries = [
        [labels[i], labels[j], labels[k], int(datum.fusion[i, j, k])]
        for i, j, k in zip(*np.nonzero(datum.fusion))
    ]
    return {
        "modules": list(labels),
        "unit": labels[datum.unit],
        "dual": {labels[i]: labels[d] for i, d in enumerate(datum.dual)},
        "central_charge": str(datum.central_charge),
        "conformal_dimensions": {labels[i]: str(a) for i, a in enumerate(datum.conf_dim)},
        "fusion": entries,
    }


def datum_from_dict(doc: Mapping, *, check: bool = True) -> FusionDatum:
    """Build a datum from its document.

    Each ``fusion`` entry sets exactly the listed ordered triple, so S3
    symmetry is left for validation to confirm.  ``check=False`` skips the
    axiom checks (structural problems still raise :class:`ParseError`).
    """
    if not isinstance(doc, Mapping):
        raise ParseError("fusion document must be an object")
    try:
        labels = [str(x) for x in doc["modules"]]
        pos = {s: i for i, s in enumerate(labels)}
        if len(pos) != len(labels):
            raise ParseError("duplicate module labels")

        def idx(s, where):
            if s not in pos:
                raise ParseError(f"{where}: unknown module label {s!r}")
            return pos[s]

        m = len(labels)
        unit = idx(doc["unit"], "unit")
        dual_doc = doc["dual"]
        dual = [idx(dual_doc[s], f"dual[{s}]") if s in dual_doc else None for s in labels]
        if None in dual:
            raise ParseError("dual must list every module")
        conf_doc = doc["conformal_dimensions"]
        conf = []
        for s in labels:
            if s not in conf_doc:
                raise ParseError(f"missing conformal dimension for {s!r}")
            conf.append(_rational(conf_doc[s], f"conformal_dimensions[{s}]"))
        c = _rational(doc["central_charge"], "central_charge")
        N = np.zeros((m, m, m), dtype=np.int64)
        seen = set()
        for entry in doc["fusion"]:
            if not isinstance(entry, list) or len(entry) != 4:
                raise ParseError(f"fusion entry {entry!r} must be [label, label, label, integer]")
            a, b, k, val = entry
            if isinstance(val, bool) or not isinstance(val, int) or val < 0:
                raise ParseError(f"fusion entry {entry!r} needs a nonnegative integer")
            t = (idx(a, "fusion"), idx(b, "fusion"), idx(k, "fusion"))
            if t in seen:
                raise ParseError(f"fusion triple {entry[:3]} listed twice")
            seen.add(t)
            N[t] = val
    except KeyError as exc:
        raise ParseError(f"fusion document is missing field {exc}") from None
    except TypeError as exc:
        raise ParseError(f"malformed fusion document: {exc}") from None
    try:
        return FusionDatum(labels, unit, dual, N, conf, c, check=check)
    except StructuralError as exc:
        raise ParseError(str(exc)) from exc


def datum_hash(datum: FusionDatum) -> str:
    return hashlib.sha256(dumps(datum_to_dict(datum)).encode()).hexdigest()[:20]


def gram_from_dict(doc) -> list[list[int]]:
    if not isinstance(doc, Mapping) or "gram" not in doc:
        raise ParseError("lattice document must be an object with a 'gram' field")
    gram = doc["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise ParseError("gram must be a list of integer rows")
    for row in gram:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ParseError(f"gram entries must be integers, got {x!r}")
    return gram


def graphs_to_json(graphs: GraphList) -> list[dict]:
    return [{"graph": gr.to_dict(), "aut": aut} for gr, aut in graphs]


def graphs_from_json(doc) -> GraphList:
    try:
        return tuple((StableGraph.from_dict(r["graph"]), int(r["aut"])) for r in doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph list: {exc}") from exc


def rank_table_to_json(table: RankTable) -> list:
    return [[g, list(mods), r] for (g, mods), r in sorted(table.memo.items())]


def rank_table_from_json(table: RankTable, doc) -> None:
    """Merge serialized entries into ``table.memo``."""
    try:
        entries = {(int(g), tuple(int(i) for i in mods)): int(r) for g, mods, r in doc}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed rank table: {exc}") from exc
    for (g, mods), r in entries.items():
        if r < 0 or any(not 0 <= i < table.datum.size for i in mods) or list(mods) != sorted(mods):
            raise ParseError("rank table entry out of range")
    table.memo.update(entries)
