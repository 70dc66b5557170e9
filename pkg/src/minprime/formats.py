"""JSON and DOT serialization, and loading of structures from files or family references."""
from __future__ import annotations

import json
from pathlib import Path

from .families import generate, parse_family_ref
from .graph_core import Graph, Poset, bits
from .lattice import Lattice


def graph_to_dict(g: Graph) -> dict:
    return {"type": "graph", "n": g.n, "edges": [list(e) for e in g.edges()]}


def poset_to_dict(p: Poset) -> dict:
    return {"type": "poset", "n": p.n, "lt": [list(r) for r in p.relations()]}


def to_dict(obj: Graph | Poset | Lattice) -> dict:
    if isinstance(obj, Graph):
        return graph_to_dict(obj)
    if isinstance(obj, Poset):
        return poset_to_dict(obj)
    if isinstance(obj, Lattice):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pairs(data: dict, key: str, n: int) -> list[tuple[int, int]]:
    raw = data.get(key)
    if not isinstance(raw, list):
        raise ValueError(f"'{key}' must be a list of pairs")
    out = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise ValueError(f"malformed pair {item!r} in '{key}'")
        u, v = item
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"pair {item!r} out of range for n={n}")
        out.append((u, v))
    return out


def from_dict(data: dict) -> Graph | Poset:
    if not isinstance(data, dict):
        raise ValueError("structure JSON must be an object")
    n = data.get("n")
    if not isinstance(n, int) or n < 0:
        raise ValueError("'n' must be a non-negative integer")
    kind = data.get("type")
    if kind == "graph":
        edges = _pairs(data, "edges", n)
        if any(u == v for u, v in edges):
            raise ValueError("graphs are loopless")
        return Graph.from_edges(n, edges)
    if kind == "poset":
        return Poset.from_relations(n, _pairs(data, "lt", n))
    raise ValueError(f"unknown structure type {kind!r}")


def dumps(obj) -> str:
    data = obj if isinstance(obj, (dict, list)) else to_dict(obj)
    return json.dumps(data, sort_keys=True)


def loads(text: str) -> Graph | Poset:
    return from_dict(json.loads(text))


def load(source: str) -> Graph | Poset:
    """Load from a ``family:<name>:<n>[:complement][:dual]`` reference or a JSON file path."""
    if source.startswith("family:"):
        return generate(parse_family_ref(source))
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{source} is not valid JSON: {exc.msg}") from exc


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(p: Poset, name: str = "P") -> str:
    """Hasse diagram, drawn bottom to top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {v};" for v in range(p.n)]
    lines += [f"  {u} -> {v};" for u, v in p.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_to_dot(l: Lattice, name: str = "L") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, x in enumerate(l.elements):
        label = "{" + ",".join(str(v) for v in bits(x)) + "}"
        lines.append(f'  {i} [label="{label}"];')
    lines += [f"  {i} -> {j};" for i, j in l.covers]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(obj: Graph | Poset | Lattice) -> str:
    if isinstance(obj, Graph):
        return graph_to_dot(obj)
    if isinstance(obj, Poset):
        return poset_to_dot(obj)
    if isinstance(obj, Lattice):
        return lattice_to_dot(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
