"""Command-line interface: ``minprime <verb> [options]``.

Exit codes: 0 success, 1 a verification suite found a violation, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .embed import extremal_sets, induced_embedding, largest_family_prefix
from .errors import MinprimeError
from .extract import extract_g0_or_g1, extract_g2_or_g3
from .families import GRAPH_FAMILIES, POSET_FAMILIES, FamilySpec, generate, parse_family_ref
from .formats import dumps, load, to_dict, to_dot
from .graph_core import (
    Graph,
    IncidenceStructure,
    Poset,
    bipartition,
    bits,
    comparability_graph,
)
from .lattice import is_ferrers, longest_chain, neighborhood_lattice
from .modular import is_point_determining, is_prime_graph, is_prime_poset
from .orientation import order_dimension, realizer, transitive_orientations
from .verify import SUITES, replay, run_suite

VERBS = ("gen", "analyze", "embed", "orient", "dim", "lattice", "extract", "verify")
EXIT_OK, EXIT_VIOLATION, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Command:
    verb: str
    options: dict = field(default_factory=dict)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _source(text: str) -> str:
    if text.startswith("family:"):
        try:
            parse_family_ref(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _family_name(text: str) -> str:
    name = text.upper()
    if name not in GRAPH_FAMILIES and name not in POSET_FAMILIES:
        known = ", ".join(f.lower() for f in GRAPH_FAMILIES + POSET_FAMILIES)
        raise argparse.ArgumentTypeError(f"unknown family {text!r} (known: {known})")
    return name


def _build_parser() -> _Parser:
    parser = _Parser(prog="minprime", description="Prime graphs, posets and neighborhood lattices.")
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="generate a family member")
    p.add_argument("--family", type=_family_name, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--complement", action="store_true")
    p.add_argument("--dual", action="store_true")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("analyze", help="structural report for a graph or poset")
    p.add_argument("input", type=_source)
    p.add_argument("--k-max", type=_positive, default=8, help="largest family prefix searched")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("embed", help="search for an induced embedding")
    p.add_argument("--pattern", type=_source, required=True)
    p.add_argument("--target", type=_source, required=True)
    p.add_argument("--budget", type=_positive, default=10**6)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("orient", help="list all transitive orientations")
    p.add_argument("input", type=_source)
    p.add_argument("--max-edges", type=_positive, default=64)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dim", help="order dimension up to --max")
    p.add_argument("input", type=_source)
    p.add_argument("--max", type=_positive, default=4, dest="k_max")
    p.add_argument("--max-elements", type=_positive, default=12)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lattice", help="neighborhood lattice export")
    p.add_argument("input", type=_source)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("extract", help="extract an induced family prefix")
    p.add_argument("input", type=_source)
    p.add_argument("--mode", choices=("bipartite", "sparse"), required=True)
    p.add_argument("--threshold", type=_positive, default=3)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--max-n", type=_positive)
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--samples", type=_positive, default=10_000)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--replay", help="JSON file holding a violation payload")
    p.add_argument("--json", action="store_true")
    return parser


def parse_command(argv: list[str]) -> Command:
    """Parse and validate ``argv``; raises :class:`UsageError` naming the offending flag."""
    args = _build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items() if k != "verb"}
    if args.verb == "gen":
        try:
            FamilySpec(args.family, args.n, complemented=args.complement, dualized=args.dual)
        except ValueError as exc:
            raise UsageError(f"minprime gen: {exc}") from None
    if args.verb == "verify" and args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"minprime verify: argument --suite: unknown suite {args.suite!r}")
    return Command(args.verb, options)


def _emit(cmd: Command, data: dict, text: str) -> None:
    print(json.dumps(data, sort_keys=True) if cmd.options.get("json") else text)


def _need_graph(obj) -> Graph:
    if isinstance(obj, Poset):
        return comparability_graph(obj)
    return obj


def _need_poset(obj) -> Poset:
    if not isinstance(obj, Poset):
        raise ValueError("this verb needs a poset input")
    return obj


def _gen(cmd: Command) -> int:
    o = cmd.options
    obj = generate(FamilySpec(o["family"], o["n"], complemented=o["complement"], dualized=o["dual"]))
    text = to_dot(obj) if o["format"] == "dot" else dumps(obj)
    if o.get("output"):
        Path(o["output"]).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))
    return EXIT_OK


def _analyze(cmd: Command) -> int:
    obj = load(cmd.options["input"])
    g = _need_graph(obj)
    report: dict = {"n": g.n, "edges": g.edge_count()}
    if isinstance(obj, Poset):
        report["poset_prime"] = is_prime_poset(obj).prime
    prime = is_prime_graph(g)
    report["prime"] = prime.prime
    report["indecomposable"] = prime.indecomposable
    report["nontrivial_autonomous_set"] = prime.witness_vertices
    report["point_determining"] = is_point_determining(g)
    clique, indep = extremal_sets(g)
    report["clique_number"] = len(clique)
    report["independence_number"] = len(indep)
    lat = neighborhood_lattice(g)
    length, chain = longest_chain(lat)
    report["lattice_size"] = len(lat)
    report["longest_chain"] = length
    sides = bipartition(g)
    if sides is not None:
        a, b = sides
        r = IncidenceStructure.from_predicate(
            len(list(bits(a))), len(list(bits(b))),
            lambda x, y, av=list(bits(a)), bv=list(bits(b)): g.has_edge(av[x], bv[y]),
        )
        report["ferrers_halves"] = is_ferrers(r)[0]
    k_max = cmd.options["k_max"]
    report["family_prefixes"] = {
        fam: largest_family_prefix(g, fam, k_max)[0] for fam in ("G0", "G1", "G2", "G3", "G4")
    }
    text = "\n".join(f"{k}: {v}" for k, v in report.items())
    _emit(cmd, report, text)
    return EXIT_OK


def _embed(cmd: Command) -> int:
    h = _need_graph(load(cmd.options["pattern"]))
    g = _need_graph(load(cmd.options["target"]))
    w = induced_embedding(h, g, budget=cmd.options["budget"])
    data = {"found": w is not None, "map": None if w is None else list(w.map)}
    text = "no induced embedding" if w is None else "map: " + " ".join(
        f"{v}->{t}" for v, t in enumerate(w.map)
    )
    _emit(cmd, data, text)
    return EXIT_OK


def _orient(cmd: Command) -> int:
    g = _need_graph(load(cmd.options["input"]))
    found = transitive_orientations(g, max_edges=cmd.options["max_edges"]).orientations
    data = {"count": len(found), "orientations": [to_dict(p) for p in found]}
    text = "\n".join([f"orientations: {len(found)}"] + [dumps(p) for p in found])
    _emit(cmd, data, text)
    return EXIT_OK


def _dim(cmd: Command) -> int:
    p = _need_poset(load(cmd.options["input"]))
    k_max = cmd.options["k_max"]
    d = order_dimension(p, k_max=k_max, max_elements=cmd.options["max_elements"])
    orders = realizer(p, d) if d is not None else None
    data = {"dimension": d, "exceeds": k_max if d is None else None, "realizer": orders}
    text = f"dimension: {d}" if d is not None else f"dimension: > {k_max}"
    _emit(cmd, data, text)
    return EXIT_OK


def _lattice(cmd: Command) -> int:
    g = _need_graph(load(cmd.options["input"]))
    lat = neighborhood_lattice(g)
    if cmd.options["format"] == "dot" and not cmd.options.get("json"):
        print(to_dot(lat).rstrip("\n"))
    else:
        print(dumps(lat))
    return EXIT_OK


def _extract(cmd: Command) -> int:
    g = _need_graph(load(cmd.options["input"]))
    if cmd.options["mode"] == "bipartite":
        result = extract_g0_or_g1(g)
    else:
        result = extract_g2_or_g3(g, s_threshold=cmd.options["threshold"])
    data = result.to_dict()
    lines = [f"kind: {result.kind.value}", f"m: {result.m}"]
    if result.witness is not None:
        lines.append("map: " + " ".join(f"{v}->{t}" for v, t in enumerate(result.witness.map)))
    if result.clique is not None:
        lines.append(f"clique: {list(result.clique)}")
    _emit(cmd, data, "\n".join(lines))
    return EXIT_OK


def _verify(cmd: Command) -> int:
    o = cmd.options
    if o.get("replay"):
        payload = json.loads(Path(o["replay"]).read_text())
        messages = replay(payload)
        _emit(cmd, {"suite": payload.get("suite"), "messages": messages},
              "\n".join(messages) if messages else "no violation reproduced")
        return EXIT_VIOLATION if messages else EXIT_OK
    suites = list(SUITES) if o["suite"] == "all" else [o["suite"]]
    params = {"max_n": o["max_n"], "seed": o["seed"], "samples": o["samples"]}
    reports = [run_suite(s, params, jobs=o["jobs"]) for s in suites]
    failed = any(not r.passed for r in reports)
    if o.get("json"):
        print(json.dumps({"reports": [r.to_dict() for r in reports], "passed": not failed}, sort_keys=True))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: {r.instances} instances, {len(r.violations)} violations, "
                  f"{r.wall_time:.1f}s")
            for v in r.violations:
                print("  " + json.dumps(v, sort_keys=True))
    return EXIT_VIOLATION if failed else EXIT_OK


_HANDLERS = {
    "gen": _gen, "analyze": _analyze, "embed": _embed, "orient": _orient,
    "dim": _dim, "lattice": _lattice, "extract": _extract, "verify": _verify,
}


def execute(cmd: Command) -> int:
    try:
        return _HANDLERS[cmd.verb](cmd)
    except (ValueError, OSError, MinprimeError) as exc:
        print(f"minprime {cmd.verb}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    try:
        cmd = parse_command(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    return execute(cmd)


if __name__ == "__main__":
    sys.exit(main())
