"""Command-line interface.

Exit status is 0 on success, 1 when the input fails validation (with an
``E-*`` prefixed message on stderr) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .cache import Cache, default_directory
from .chern import (
    chern_character,
    chern_smooth,
    first_chern_closed_form,
    first_chern_from_character,
    moduli_dimension,
)
from .fusion import AxiomError, FusionDatum, validate
from .graphs import enumerate_graphs, seed_graph_cache
from .lattice import (
    InvalidLatticeError,
    discriminant_group,
    fusion_datum_from_gram,
    validate_gram,
)
from .ranks import rank_exact, rank_semisimple, rank_table
from .serialize import (
    ParseError,
    datum_from_dict,
    datum_hash,
    datum_to_dict,
    dumps,
    gram_from_dict,
    graphs_from_json,
    graphs_to_json,
    load_document,
    rank_table_from_json,
    rank_table_to_json,
)


class CliError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cohftvoa",
        description="Ranks and Chern characters of bundles of coinvariants from fusion data.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="cache directory (default: $COHFTVOA_CACHE)")
    common.add_argument("--threads", type=int, default=1, help="bound on internal parallelism")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--machine", "--json", dest="machine", action="store_true", help="JSON output")
    fmt.add_argument("--pretty", dest="machine", action="store_false", help="human-readable output")

    source = argparse.ArgumentParser(add_help=False)
    src = source.add_mutually_exclusive_group(required=True)
    src.add_argument("--datum", help="fusion datum document")
    src.add_argument("--lattice", help="lattice document {\"gram\": [[...]]}")

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("--genus", type=int, required=True)
    query.add_argument("--modules", default="", help="comma-separated module labels")

    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("fusion-check", parents=[common, source], help="validate a fusion datum")
    lat = sub.add_parser("lattice-info", parents=[common], help="discriminant group and fusion datum of a lattice")
    lat.add_argument("--lattice", required=True)
    r = sub.add_parser("rank", parents=[common, source, query], help="rank of a bundle of coinvariants")
    r.add_argument("--oracle", action="store_true", help="also evaluate the semisimple formula")
    ch = sub.add_parser("chern", parents=[common, source, query], help="Chern character")
    ch.add_argument("--degree", type=int, default=None, help="truncation degree (default: dimension)")
    ch.add_argument("--smooth", action="store_true", help="restrict to the smooth locus")
    sub.add_parser("c1", parents=[common, source, query], help="first Chern class, both ways")
    gr = sub.add_parser("graphs", parents=[common], help="stable graphs of type (g, n)")
    gr.add_argument("--genus", type=int, required=True)
    gr.add_argument("--n", type=int, required=True)
    return p


def _load_datum(args) -> FusionDatum:
    if getattr(args, "lattice", None):
        gram = gram_from_dict(load_document(args.lattice))
        try:
            return fusion_datum_from_gram(gram)
        except InvalidLatticeError as exc:
            raise CliError("E-AXIOM", str(exc)) from exc
    datum = datum_from_dict(load_document(args.datum), check=False)
    report = validate(datum)
    if report:
        raise CliError("E-AXIOM", "; ".join(str(v) for v in report))
    return datum


def _resolve(datum: FusionDatum, spec: str) -> tuple[int, ...]:
    labels = [s.strip() for s in spec.split(",")] if spec.strip() else []
    out = []
    for s in labels:
        try:
            out.append(datum.index(s))
        except KeyError:
            raise CliError("E-LABEL", f"unknown module label {s!r}; known: {', '.join(datum.modules)}") from None
    return tuple(out)


def _stable(g: int, n: int) -> None:
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise CliError("E-STABILITY", f"(g, n) = ({g}, {n}) does not satisfy 2g - 2 + n > 0")


def _cache(args) -> Cache | None:
    path = args.cache_dir or default_directory()
    return Cache(path) if path else None


def _parses(load):
    def accept(payload: bytes) -> bool:
        try:
            load(json.loads(payload))
            return True
        except (ValueError, ParseError):
            return False

    return accept


def _graphs(cache: Cache | None, g: int, n: int):
    if cache is None:
        return enumerate_graphs(g, n)
    payload = cache.roundtrip(
        f"graphs-{g}-{n}",
        lambda: dumps(graphs_to_json(enumerate_graphs(g, n))).encode(),
        _parses(graphs_from_json),
    )
    graphs = graphs_from_json(json.loads(payload))
    seed_graph_cache(g, n, graphs)
    return graphs


def _with_rank_cache(cache: Cache | None, datum: FusionDatum, work):
    if cache is None:
        return work()
    table = rank_table(datum)
    key = f"ranks-{datum_hash(datum)}"
    payload = cache.get(key)
    if payload is not None:
        try:
            rank_table_from_json(table, json.loads(payload))
        except (ValueError, ParseError):
            table.memo.clear()
    result = work()
    cache.put(key, dumps(rank_table_to_json(table)).encode())
    return result


def _emit(args, machine_doc, pretty: str) -> None:
    if args.machine:
        sys.stdout.write(dumps(machine_doc))
    else:
        sys.stdout.write(pretty.rstrip("\n") + "\n")


def _class_doc(cls) -> dict:
    return {"g": cls.g, "n": cls.n, "max_degree": cls.max_degree, "terms": cls.to_json()}


def cmd_fusion_check(args) -> int:
    datum = _load_datum(args)
    _emit(
        args,
        {"valid": True, "datum": datum_to_dict(datum)},
        f"ok: {datum.size} modules, central charge {datum.central_charge}",
    )
    return 0


def cmd_lattice_info(args) -> int:
    gram = gram_from_dict(load_document(args.lattice))
    report = validate_gram(gram)
    if report:
        raise CliError("E-AXIOM", "; ".join(str(v) for v in report))
    disc = discriminant_group(gram)
    datum = fusion_datum_from_gram(gram)
    reps = {disc.label(x): [str(v) for v in disc.coset_reps[x]] for x in disc.elements}
    doc = {
        "gram": gram,
        "elementary_divisors": list(disc.elementary_divisors),
        "order": disc.order,
        "coset_representatives": reps,
        "datum": datum_to_dict(datum),
    }
    lines = [
        f"rank {len(gram)}, discriminant group "
        + (" + ".join(f"Z/{d}" for d in disc.elementary_divisors) or "trivial")
        + f" (order {disc.order})",
        f"central charge {datum.central_charge}",
    ]
    for i, label in enumerate(datum.modules):
        lines.append(
            f"  {label:>8}  rep ({', '.join(reps[label])})  a = {datum.conf_dim[i]}  dual {datum.modules[datum.dual[i]]}"
        )
    _emit(args, doc, "\n".join(lines))
    return 0


def _query(args):
    datum = _load_datum(args)
    mods = _resolve(datum, args.modules)
    _stable(args.genus, len(mods))
    return datum, mods


def cmd_rank(args) -> int:
    datum, mods = _query(args)
    cache = _cache(args)
    r = _with_rank_cache(cache, datum, lambda: rank_exact(datum, args.genus, mods))
    doc = {"genus": args.genus, "modules": [datum.modules[i] for i in mods], "rank": r}
    text = str(r)
    if args.oracle:
        approx = rank_semisimple(datum, args.genus, mods)
        doc.update(semisimple=repr(approx), discrepancy=repr(abs(approx - r)))
        text = f"{r}\nsemisimple {approx!r}\ndiscrepancy {abs(approx - r):.3e}"
    _emit(args, doc, text)
    return 0


def cmd_chern(args) -> int:
    datum, mods = _query(args)
    dim = moduli_dimension(args.genus, len(mods))
    D = dim if args.degree is None else args.degree
    if D < 0 or D > dim:
        raise CliError("E-DEGREE", f"degree must lie in 0..{dim} for (g, n) = ({args.genus}, {len(mods)})")
    cache = _cache(args)
    if args.smooth:
        cls = _with_rank_cache(cache, datum, lambda: chern_smooth(datum, args.genus, mods, D))
    else:
        if D == dim:
            _graphs(cache, args.genus, len(mods))
        cls = _with_rank_cache(cache, datum, lambda: chern_character(datum, args.genus, mods, D))
    _emit(args, _class_doc(cls), "\n".join(_pretty_by_degree(cls)))
    return 0


def _pretty_by_degree(cls) -> list[str]:
    lines = []
    for d in range(cls.max_degree + 1):
        part = cls.degree_part(d)
        lines.append(f"degree {d}: {part}")
    return lines


def cmd_c1(args) -> int:
    datum, mods = _query(args)
    cache = _cache(args)

    def work():
        return (
            first_chern_closed_form(datum, args.genus, mods),
            first_chern_from_character(datum, args.genus, mods),
        )

    closed, from_pv = _with_rank_cache(cache, datum, work)
    agree = closed == from_pv
    doc = {"closed_form": _class_doc(closed), "from_character": _class_doc(from_pv), "agree": agree}
    text = f"closed form:    {closed}\nfrom P_V:       {from_pv}\n" + ("agree" if agree else "DISAGREE")
    _emit(args, doc, text)
    return 0 if agree else 1


def cmd_graphs(args) -> int:
    _stable(args.genus, args.n)
    graphs = _graphs(_cache(args), args.genus, args.n)
    lines = [f"{len(graphs)} stable graphs of type ({args.genus}, {args.n})"]
    for gr, aut in graphs:
        lines.append(f"  genera={list(gr.genera)} legs={list(gr.legs)} edges={list(gr.edges)} |Aut|={aut}")
    _emit(args, graphs_to_json(graphs), "\n".join(lines))
    return 0


COMMANDS = {
    "fusion-check": cmd_fusion_check,
    "lattice-info": cmd_lattice_info,
    "rank": cmd_rank,
    "chern": cmd_chern,
    "c1": cmd_c1,
    "graphs": cmd_graphs,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.threads < 1:
        _parser().error("--threads must be positive")
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"E-PARSE: {exc}", file=sys.stderr)
        return 1
    except AxiomError as exc:
        print(f"E-AXIOM: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
