"""Property suites over exhaustively enumerated and seeded random instances.

Every suite is split into work items (JSON-serializable payloads) produced
deterministically from the parameters, and a top-level check function that
returns the violation messages for one item.  A violation carries its item, so
it can be replayed with :func:`replay`.  Items may be processed in parallel
shards; shards are merged in order, so reports do not depend on ``jobs``.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .census import enumerate_graphs, enumerate_posets
from .embed import EmbeddingWitness, induced_embedding, separating_witness
from .extract import extract_g0_or_g1, extract_g2_or_g3
from .families import (
    ANTICHAIN_FAMILIES,
    PRIME_THRESHOLD,
    FamilySpec,
    gen_graph,
    generate,
    named_graph,
    named_poset,
    parse_family_ref,
)
from .formats import from_dict, graph_to_dict, poset_to_dict
from .graph_core import (
    Graph,
    IncidenceStructure,
    comparability_graph,
    complement,
    dual_poset,
    incomparability_graph,
    is_bipartite,
    is_connected,
    popcount,
)
from .lattice import (
    Lattice,
    dual_galois_check,
    find_coding,
    galois_lattice,
    is_ferrers,
    is_order_isomorphic,
    is_self_dual,
    neighborhood_lattice,
    order_embeds,
)
from .modular import is_point_determining, is_prime_graph, is_prime_poset, point_determining_quotient
from .orientation import (
    is_comparability,
    order_dimension,
    realizer,
    realizer_intersection,
    transitive_orientations,
)


@dataclass
class SuiteReport:
    suite: str
    instances: int
    violations: list[dict]
    wall_time: float
    params: dict
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "instances": self.instances,
            "violations": self.violations,
            "params": self.params,
            "stats": dict(sorted(self.stats.items())),
            "passed": self.passed,
        }
        if include_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def _structure(item: dict) -> IncidenceStructure:
    return IncidenceStructure(item["e"], item["f"], tuple(item["rows"]))


def _structure_dict(r: IncidenceStructure) -> dict:
    return {"e": r.e_size, "f": r.f_size, "rows": list(r.rows)}


def _random_structure(rng: random.Random, e: int, f: int, density: float) -> IncidenceStructure:
    rows = tuple(
        sum(1 << y for y in range(f) if rng.random() < density) for _ in range(e)
    )
    return IncidenceStructure(e, f, rows)


def _bound(params: dict, default: int) -> int:
    return min(default, params["max_n"]) if params.get("max_n") is not None else default


# ---------------------------------------------------------------- census suites

def _graph_items(max_n: int, filter: str = "all", min_n: int = 1) -> list[dict]:
    return [
        {"graph": graph_to_dict(g)}
        for n in range(min_n, max_n + 1)
        for g in enumerate_graphs(n, filter)
    ]


_P4 = Graph.path(4)


def _items_sumner(params):
    return _graph_items(_bound(params, 7), "prime", min_n=4)


def _check_sumner(item):
    g = from_dict(item["graph"])
    if not is_prime_graph(g).prime:
        return ["enumerated as prime but is not prime"], {}
    if induced_embedding(_P4, g) is None:
        return ["prime graph without an induced P4"], {}
    return [], {}


def _items_bipartite(params):
    return _graph_items(_bound(params, 8), "bipartite", min_n=4)


def _check_bipartite(item):
    g = from_dict(item["graph"])
    if not is_bipartite(g):
        return ["bipartite enumeration produced a non-bipartite graph"], {}
    prime = is_prime_graph(g).prime
    expected = is_connected(g) and is_point_determining(g)
    if prime != expected:
        return [f"prime={prime} but connected and point-determining={expected}"], {}
    return [], {"prime": int(prime)}


def _items_complement(params):
    return _graph_items(_bound(params, 7))


def _check_complement(item):
    g = from_dict(item["graph"])
    a, b = is_prime_graph(g).prime, is_prime_graph(complement(g)).prime
    if a != b:
        return [f"prime(g)={a} but prime(complement)={b}"], {}
    return [], {"prime": int(a)}


def _items_kelly(params):
    bound = _bound(params, 7)
    items = _graph_items(bound, "prime", min_n=4)
    items += [
        {"poset": poset_to_dict(p)} for n in range(1, min(bound, 6) + 1) for p in enumerate_posets(n)
    ]
    return items


def _check_kelly(item):
    if "poset" in item:
        p = from_dict(item["poset"])
        a, b = is_prime_poset(p).prime, is_prime_graph(comparability_graph(p)).prime
        if a != b:
            return [f"prime(P)={a} but prime(Comp(P))={b}"], {}
        return [], {"posets": 1}
    g = from_dict(item["graph"])
    found = transitive_orientations(g, max_edges=None).orientations
    if not found:
        return [], {"not_comparability": 1}
    if len(found) != 2:
        return [f"prime comparability graph with {len(found)} transitive orientations"], {}
    if dual_poset(found[0]) != found[1]:
        return ["the two transitive orientations are not mutually dual"], {}
    return [], {"comparability": 1}


def _items_selfdual(params):
    return _graph_items(_bound(params, 6))


def _check_selfdual(item):
    g = from_dict(item["graph"])
    ok, f = is_self_dual(neighborhood_lattice(g))
    if not ok:
        return ["neighborhood lattice is not isomorphic to its dual"], {}
    return [], {}


def _items_lem2(params):
    return [
        it for it in _graph_items(_bound(params, 7)) if is_point_determining(from_dict(it["graph"]))
    ]


def _check_lem2(item):
    g = from_dict(item["graph"])
    l = neighborhood_lattice(g)
    if l.bottom != 0:
        return ["the empty set is not the least element"], {}
    atoms = [l.elements[j] for i, j in l.covers if i == 0]
    bad = [a for a in atoms if popcount(a) != 1]
    if bad:
        return [f"non-singleton atom {sorted(bad)}"], {}
    return [], {"atoms": len(atoms)}


def _items_quotient(params):
    return _graph_items(_bound(params, 6))


def _check_quotient(item):
    g = from_dict(item["graph"])
    q, _ = point_determining_quotient(g)
    a, b = neighborhood_lattice(g), neighborhood_lattice(q)
    if len(a) != len(b):
        return [f"lattice sizes differ: {len(a)} vs {len(b)}"], {}
    if not is_order_isomorphic(a, b):
        return ["lattices of g and its quotient are not isomorphic"], {}
    return [], {"proper_quotient": int(q.n < g.n)}


# ---------------------------------------------------------------- random incidence suites

def _items_galois(params):
    rng = random.Random(params["seed"])
    side = 5
    return [
        {"r": _structure_dict(
            _random_structure(rng, rng.randint(1, side), rng.randint(1, side), rng.random())
        )}
        for _ in range(params["samples"])
    ]


def _check_galois(item):
    r = _structure(item["r"])
    if not dual_galois_check(r):
        return ["Gal(R^-1) is not anti-isomorphic to Gal(R)"], {}
    return [], {}


def _random_ferrers(rng: random.Random, e: int, f: int) -> IncidenceStructure:
    perm = list(range(f))
    rng.shuffle(perm)
    rows = tuple(sum(1 << perm[i] for i in range(rng.randint(0, f))) for _ in range(e))
    return IncidenceStructure(e, f, rows)


def _items_ferrers(params):
    rng = random.Random(params["seed"])
    side = 6
    items = []
    for i in range(params["samples"]):
        e, f = rng.randint(1, side), rng.randint(1, side)
        r = _random_ferrers(rng, e, f) if i % 2 == 0 else _random_structure(rng, e, f, rng.random())
        items.append({"r": _structure_dict(r)})
    return items


def _check_ferrers(item):
    r = _structure(item["r"])
    ok, witness = is_ferrers(r)
    chain = galois_lattice(r).is_chain()
    if ok != chain:
        return [f"is_ferrers={ok} but Galois lattice chain={chain}"], {}
    if witness is not None:
        x, x2, y, y2 = witness
        if not (r.related(x, y) and r.related(x2, y2) and not r.related(x, y2) and not r.related(x2, y)):
            return ["reported Ferrers violation does not check out"], {}
    return [], {"ferrers": int(ok)}


def _items_coding(params):
    rng = random.Random(params["seed"])
    items = []
    for i in range(params["samples"]):
        e, f = rng.randint(1, 4), rng.randint(1, 4)
        small = _random_structure(rng, e, f, rng.random())
        e2, f2 = rng.randint(e, 6), rng.randint(f, 6)
        big = _random_structure(rng, e2, f2, rng.random())
        planted = i % 3 == 0
        if planted:
            fx = rng.sample(range(e2), e)
            gy = rng.sample(range(f2), f)
            rows = list(big.rows)
            for x in range(e):
                for y in range(f):
                    bit = 1 << gy[y]
                    rows[fx[x]] = rows[fx[x]] | bit if small.related(x, y) else rows[fx[x]] & ~bit
            big = IncidenceStructure(e2, f2, tuple(rows))
        items.append({"small": _structure_dict(small), "big": _structure_dict(big), "planted": planted})
    return items


def _check_coding(item):
    small, big = _structure(item["small"]), _structure(item["big"])
    w = find_coding(small, big)
    if w is None:
        if item["planted"]:
            return ["planted coding was not found"], {}
        return [], {"no_coding": 1}
    if not w.verify(small, big):
        return ["coding witness does not verify"], {}
    if order_embeds(galois_lattice(small), galois_lattice(big)) is None:
        return ["coding exists but Gal(R) does not embed into Gal(R')"], {}
    return [], {"with_coding": 1}


# ---------------------------------------------------------------- family suites

def _powerset(k: int) -> Lattice:
    return Lattice.from_family(k, range(1 << k))


def _items_cor3(params):
    rng = random.Random(params["seed"])
    items = []
    for k in range(1, 5):
        for pattern in ("G0", "clique"):
            base = named_graph("G0", k) if pattern == "G0" else Graph.complete(k)
            items.append({"k": k, "pattern": pattern, "graph": graph_to_dict(base)})
            for _ in range(params.get("hosts", 10)):
                extra = rng.randint(1, 3)
                n = base.n + extra
                edges = list(base.edges())
                edges += [(u, v) for v in range(base.n, n) for u in range(v) if rng.random() < 0.5]
                perm = list(range(n))
                rng.shuffle(perm)
                host = Graph.from_edges(n, edges).relabel(perm)
                items.append({"k": k, "pattern": pattern, "graph": graph_to_dict(host)})
    return items


def _check_cor3(item):
    g = from_dict(item["graph"])
    k = item["k"]
    pattern = named_graph("G0", k) if item["pattern"] == "G0" else Graph.complete(k)
    if induced_embedding(pattern, g) is None:
        return ["host does not contain the planted pattern"], {}
    if order_embeds(_powerset(k), neighborhood_lattice(g)) is None:
        return [f"powerset of a {k}-set does not embed in the neighborhood lattice"], {}
    return [], {}


def _items_family_prime(params):
    bound = _bound(params, 20)
    return [
        {"family": str(FamilySpec(fam, n, complemented=comp)), "threshold": thr}
        for fam, thr in PRIME_THRESHOLD.items()
        for comp in (False, True)
        for n in range(1, bound + 1)
    ]


def _check_family_prime(item):
    spec = parse_family_ref(item["family"])
    prime = is_prime_graph(gen_graph(spec)).prime
    expected = spec.n >= item["threshold"]
    if prime != expected:
        side = "at or above" if expected else "below"
        return [f"{spec} has prime={prime} {side} threshold {item['threshold']}"], {}
    return [], {}


def _items_antichain(params):
    return [
        {"a": str(a.with_n(8)), "b": str(b.with_n(8))}
        for a in ANTICHAIN_FAMILIES
        for b in ANTICHAIN_FAMILIES
        if a != b
    ]


def _check_antichain(item):
    a, b = parse_family_ref(item["a"]), parse_family_ref(item["b"])
    sep = separating_witness(a, b, size_max=6, n_probe=a.n, probe_max=12)
    if sep is None:
        return [f"no separating graph of size <= 6 for {a} vs {b}"], {}
    if not sep.into_a.verify(sep.graph, gen_graph(a)):
        return ["separating graph does not embed into the first family"], {}
    for m in range(1, 13):
        if induced_embedding(sep.graph, gen_graph(b.with_n(m))) is not None:
            return [f"separating graph embeds into {b.with_n(m)}"], {}
    return [], {f"size_{sep.size}": 1}


def _map_check(h: Graph, g: Graph, mapping: list[int]) -> bool:
    return EmbeddingWitness(tuple(mapping)).verify(h, g) and h.n == g.n


def _items_comp(params):
    return [{"n": n} for n in range(1, _bound(params, 8) + 1)]


def _check_comp(item):
    n = item["n"]
    out = []
    for g_name, p_name in (("G0", "Q0"), ("G1", "Q1"), ("G2", "Q2"), ("G3", "Q3"), ("GC", "PC"), ("GAB", "PAB")):
        if comparability_graph(named_poset(p_name, n)) != named_graph(g_name, n):
            out.append(f"Comp({p_name}({n})) != {g_name}({n})")
    if comparability_graph(named_poset("P2", n)) != named_graph("G2", n, complemented=True):
        out.append(f"Comp(P2({n})) != complement of G2({n})")
    # P1 is stated over the reversed chain: x -> n-1-x on both layers.
    rev = [n - 1 - x for x in range(n)] + [2 * n - 1 - x for x in range(n)]
    if not _map_check(named_graph("G1", n, complemented=True), comparability_graph(named_poset("P1", n)), rev):
        out.append(f"complement of G1({n}) is not Comp(P1({n})) under chain reversal")
    # Swap the two layers, fix a and b.
    swap = [n + x for x in range(n)] + list(range(n)) + [2 * n, 2 * n + 1]
    if not _map_check(
        named_graph("GAB", n, complemented=True), comparability_graph(named_poset("PAB_SPLIT", n)), swap
    ):
        out.append(f"complement of GAB({n}) is not Comp(PAB_SPLIT({n})) under the layer swap")
    return out, {}


def _items_kc(params):
    return [{"n": n} for n in range(1, _bound(params, 8) + 1)]


def _check_kc(item):
    n = item["n"]
    # (x,0) -> (x,1) and (y,1) -> (y+1,0); c -> c.
    shift = [n + 1 + x for x in range(n)] + [y + 1 for y in range(n)]
    out = []
    if not EmbeddingWitness(tuple(shift)).verify(named_graph("K", n), named_graph("K", n + 1, complemented=True)):
        out.append(f"shift map does not embed K({n}) into the complement of K({n + 1})")
    shift_c = shift + [2 * (n + 1)]
    if not EmbeddingWitness(tuple(shift_c)).verify(
        named_graph("GC", n), named_graph("GC", n + 1, complemented=True)
    ):
        out.append(f"shift map does not embed GC({n}) into the complement of GC({n + 1})")
    return out, {}


def _items_q3(params):
    return [{"n": n} for n in range(3, _bound(params, 6) + 1)]


def _check_q3(item):
    p = named_poset("Q3", item["n"])
    d = order_dimension(p, k_max=4, max_elements=p.n)
    if d != 3:
        return [f"dim Q3({item['n']}) = {d}, expected 3"], {}
    orders = realizer(p, 3)
    if orders is None or realizer_intersection(orders, p.n) != p:
        return ["dimension-3 realizer does not intersect to Q3"], {}
    return [], {}


def _items_dim2(params):
    return [{"poset": poset_to_dict(p)} for n in range(1, _bound(params, 6) + 1) for p in enumerate_posets(n)]


def _check_dim2(item):
    p = from_dict(item["poset"])
    by_search = order_dimension(p, k_max=2) is not None
    by_complement = is_comparability(incomparability_graph(p), max_edges=None)
    if by_search != by_complement:
        return [f"dimension<=2 by realizer search={by_search}, by order complement={by_complement}"], {}
    if by_search:
        orders = realizer(p, 2)
        if orders is None or realizer_intersection(orders, p.n) != p:
            return ["dimension-2 realizer does not intersect to P"], {}
    return [], {"dim_le_2": int(by_search)}


_FAMILY_TARGETS = (
    ("family:g0:12", "bipartite", "G0_PREFIX", 3),
    ("family:g1:12", "bipartite", "G1_PREFIX", 3),
    ("family:g2:15", "sparse", "G2_PREFIX", 5),
    ("family:g3:15", "sparse", "G3_PREFIX", 3),
)


def _items_extraction(params):
    items = [
        {"graph": graph_to_dict(generate(parse_family_ref(ref))), "mode": mode, "kind": kind, "min_m": m, "source": ref}
        for ref, mode, kind, m in _FAMILY_TARGETS
    ]
    rng = random.Random(params["seed"])
    bound = _bound(params, 14)
    count = 0
    while count < params.get("samples_extract", 1000) and bound >= 4:
        n = rng.randint(4, bound)
        density = rng.uniform(0.15, 0.85)
        g = Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < density])
        if is_prime_graph(g).prime:
            items.append({"graph": graph_to_dict(g), "mode": "both"})
            count += 1
    return items


def _check_extraction(item):
    g = from_dict(item["graph"])
    modes = ("bipartite", "sparse") if item["mode"] == "both" else (item["mode"],)
    out = []
    stats: Counter = Counter()
    for mode in modes:
        r = extract_g0_or_g1(g) if mode == "bipartite" else extract_g2_or_g3(g)
        stats[r.kind.value] += 1
        if not r.failed:
            h = gen_graph(FamilySpec(r.kind.family, r.m))
            if not r.verify(g):
                out.append(f"{mode}: {r.kind.value}({r.m}) witness fails")
            elif induced_embedding(h, g) is None:
                out.append(f"{mode}: oracle finds no induced {r.kind.value}({r.m})")
        if "kind" in item and (r.kind.value != item["kind"] or r.m < item["min_m"]):
            out.append(f"{item['source']}: got {r.kind.value} m={r.m}, expected {item['kind']} m>={item['min_m']}")
    return out, dict(stats)


@dataclass(frozen=True)
class Suite:
    items: Callable[[dict], list[dict]]
    check: Callable[[dict], tuple[list[str], dict]]
    randomized: bool = False


SUITES: dict[str, Suite] = {
    "sumner_p4": Suite(_items_sumner, _check_sumner),
    "bipartite_prime": Suite(_items_bipartite, _check_bipartite),
    "complement_prime": Suite(_items_complement, _check_complement),
    "kelly_two": Suite(_items_kelly, _check_kelly),
    "lattice_selfdual": Suite(_items_selfdual, _check_selfdual),
    "galois_dual": Suite(_items_galois, _check_galois, randomized=True),
    "lem2_singleton": Suite(_items_lem2, _check_lem2),
    "quotient_iso": Suite(_items_quotient, _check_quotient),
    "ferrers_chain": Suite(_items_ferrers, _check_ferrers, randomized=True),
    "coding_monotone": Suite(_items_coding, _check_coding, randomized=True),
    "cor3_boolean": Suite(_items_cor3, _check_cor3, randomized=True),
    "family_prime": Suite(_items_family_prime, _check_family_prime),
    "fourteen_antichain": Suite(_items_antichain, _check_antichain),
    "comp_identifications": Suite(_items_comp, _check_comp),
    "kc_into_complement": Suite(_items_kc, _check_kc),
    "q3_dimension": Suite(_items_q3, _check_q3),
    "dim2_criterion": Suite(_items_dim2, _check_dim2),
    "extraction_sound": Suite(_items_extraction, _check_extraction, randomized=True),
}

DEFAULT_PARAMS = {"max_n": None, "seed": 0, "samples": 10_000}


def _run_shard(suite_id: str, items: list[dict]) -> tuple[list[dict], dict]:
    check = SUITES[suite_id].check
    violations = []
    stats: Counter = Counter()
    for item in items:
        messages, item_stats = check(item)
        stats.update(item_stats)
        if messages:
            violations.append({"suite": suite_id, "input": item, "messages": messages})
    return violations, dict(stats)


def run_suite(suite_id: str, params: dict | None = None, jobs: int = 1) -> SuiteReport:
    """Run one suite; ``params`` may set ``max_n``, ``seed`` and ``samples``."""
    if suite_id not in SUITES:
        raise ValueError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    merged = {**DEFAULT_PARAMS, **(params or {})}
    start = time.perf_counter()
    items = SUITES[suite_id].items(merged)
    if jobs > 1 and len(items) > 1:
        size = -(-len(items) // jobs)
        shards = [items[i:i + size] for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_shard, [suite_id] * len(shards), shards))
    else:
        results = [_run_shard(suite_id, items)]
    violations: list[dict] = []
    stats: Counter = Counter()
    for v, s in results:
        violations.extend(v)
        stats.update(s)
    return SuiteReport(
        suite_id, len(items), violations, time.perf_counter() - start, merged, dict(stats)
    )


def replay(payload: dict) -> list[str]:
    """Re-run the check recorded in a violation payload; returns its messages."""
    suite_id = payload.get("suite")
    if suite_id not in SUITES:
        raise ValueError(f"unknown suite {suite_id!r}")
    return SUITES[suite_id].check(payload["input"])[0]
