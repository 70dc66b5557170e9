"""Finite truncations of the graph and poset families.

Vertex labelling (``n`` is the truncation size):

* ``G0``: ``a_i -> i``, ``b_j -> n + j``; ``a_i ~ b_j`` iff ``i != j``.
* ``G1``: ``a_i -> i`` for ``i < n``, ``b_j -> n + j - 1`` for ``1 <= j <= n``;
  ``a_i ~ b_j`` iff ``i < j``.  Shifting the ``b`` indices by one keeps the
  truncation connected; it equals the chain form ``(x,0) ~ (y,1)`` iff ``x <= y``.
* ``G2``: the path on ``2n`` vertices, vertex ``k`` being the ``k``-th vertex
  along the path; ``b_j -> 2j`` and ``a_i -> 2i + 1`` (``a_i ~ b_i, b_{i+1}``).
* ``G3``: ``a_i -> i``, ``b_i -> n + i``, ``c -> 2n``; ``a_i ~ b_i`` and ``c ~ b_i``.
* ``G4``, ``K``, ``GC``, ``GAB`` over the chain ``0 < 1 < ... < n-1``:
  ``(x,0) -> x``, ``(x,1) -> n + x``, ``c -> 2n``, ``a -> 2n``, ``b -> 2n + 1``.

Posets use the same labels as their comparability graphs.  ``Q0``..``Q3``
orient ``G0``..``G3`` with the ``a`` side below the ``b`` side (``c`` below the
``b_i`` in ``Q3``).  ``P2`` is the transitive orientation of the complement of
``G2`` in which the least edge ``(u, v)``, ``u < v``, is oriented ``u < v``.

A finite chain is isomorphic to its dual, so the families indexed by a chain
and by its reverse coincide at every finite size; the ``dualized`` and
``complemented`` flags are the only variants exposed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .graph_core import Graph, Poset, complement, dual_poset
from .orientation import transitive_orientations

GRAPH_FAMILIES = ("G0", "G1", "G2", "G3", "G4", "K", "GC", "GAB")
POSET_FAMILIES = ("Q0", "Q1", "Q2", "Q3", "P1", "P2", "PC", "PAB", "PAB_SPLIT")

# Least size from which each family is prime.
PRIME_THRESHOLD = {"G0": 3, "G1": 2, "G2": 2, "G3": 2, "G4": 2, "GC": 2, "GAB": 2}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    complemented: bool = False
    dualized: bool = False

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        if fam not in GRAPH_FAMILIES and fam not in POSET_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError(f"family size must be >= 1, got {self.n}")
        if fam in GRAPH_FAMILIES and self.dualized:
            raise ValueError("graph families take 'complement', not 'dual'")
        if fam in POSET_FAMILIES and self.complemented:
            raise ValueError("poset families take 'dual', not 'complement'")

    @property
    def is_poset(self) -> bool:
        return self.family in POSET_FAMILIES

    def with_n(self, n: int) -> "FamilySpec":
        return FamilySpec(self.family, n, self.complemented, self.dualized)

    def __str__(self) -> str:
        parts = ["family", self.family.lower(), str(self.n)]
        if self.complemented:
            parts.append("complement")
        if self.dualized:
            parts.append("dual")
        return ":".join(parts)


_REF = re.compile(r"^family:([A-Za-z0-9_]+):(\d+)((?::(?:complement|dual))*)$")


def parse_family_ref(text: str) -> FamilySpec:
    """Parse ``family:<name>:<n>[:complement][:dual]``."""
    m = _REF.match(text)
    if not m:
        raise ValueError(f"malformed family spec {text!r}; expected family:<name>:<n>[:complement][:dual]")
    flags = [f for f in m.group(3).split(":") if f]
    return FamilySpec(
        m.group(1), int(m.group(2)), complemented="complement" in flags, dualized="dual" in flags
    )


def _chain_pairs(n: int):
    return [(x, y) for x in range(n) for y in range(n)]


def _base_graph(fam: str, n: int) -> Graph:
    if fam == "G0":
        return Graph.from_edges(2 * n, [(i, n + j) for i, j in _chain_pairs(n) if i != j])
    if fam == "G1":
        return Graph.from_edges(2 * n, [(x, n + y) for x, y in _chain_pairs(n) if x <= y])
    if fam == "G2":
        return Graph.path(2 * n)
    if fam == "G3":
        return Graph.from_edges(2 * n + 1, [(i, n + i) for i in range(n)] + [(2 * n, n + i) for i in range(n)])
    if fam == "G4":
        clique = [(x, y) for x, y in _chain_pairs(n) if x < y]
        return Graph.from_edges(2 * n, clique + [(x, n + x) for x in range(n)])
    k_edges = [(x, y) for x, y in _chain_pairs(n) if x < y] + [
        (x, n + y) for x, y in _chain_pairs(n) if x <= y
    ]
    if fam == "K":
        return Graph.from_edges(2 * n, k_edges)
    if fam == "GC":
        return Graph.from_edges(2 * n + 1, k_edges + [(2 * n, n + y) for y in range(n)])
    if fam == "GAB":
        a, b = 2 * n, 2 * n + 1
        return Graph.from_edges(2 * n + 2, k_edges + [(a, b)] + [(a, x) for x in range(n)])
    raise ValueError(f"unknown graph family {fam!r}")


def gen_graph(spec: FamilySpec) -> Graph:
    if spec.is_poset:
        raise ValueError(f"{spec.family} is a poset family; use gen_poset")
    g = _base_graph(spec.family, spec.n)
    return complement(g) if spec.complemented else g


def _base_poset(fam: str, n: int) -> Poset:
    pairs = _chain_pairs(n)
    if fam == "Q0":
        return Poset.from_relations(2 * n, [(i, n + j) for i, j in pairs if i != j])
    if fam == "Q1":
        return Poset.from_relations(2 * n, [(x, n + y) for x, y in pairs if x <= y])
    if fam == "Q2":
        lt = []
        for i in range(n):
            lt.append((2 * i + 1, 2 * i))
            if 2 * i + 2 < 2 * n:
                lt.append((2 * i + 1, 2 * i + 2))
        return Poset.from_relations(2 * n, lt)
    if fam == "Q3":
        return Poset.from_relations(
            2 * n + 1, [(i, n + i) for i in range(n)] + [(2 * n, n + i) for i in range(n)]
        )
    if fam == "P1":
        # (x,i) < (y,j) iff i >= j and x > y
        lt = []
        for i in (0, 1):
            for j in (0, 1):
                if i >= j:
                    lt.extend((i * n + x, j * n + y) for x, y in pairs if x > y)
        return Poset.from_relations(2 * n, lt)
    if fam == "P2":
        comp = complement(_base_graph("G2", n))
        orientations = transitive_orientations(comp, max_edges=None).orientations
        edges = comp.edges()
        if not edges:
            return Poset.antichain(2 * n)
        u, v = edges[0]
        chosen = [p for p in orientations if p.lt(u, v)]
        return min(chosen, key=lambda p: p.relations())
    # (x,0) < (y,j) whenever x <= y (strictly for j = 0): the shared core of PC and PAB.
    core = [(x, y) for x, y in pairs if x < y] + [(x, n + y) for x, y in pairs if x <= y]
    if fam == "PC":
        c = 2 * n
        return Poset.from_relations(2 * n + 1, core + [(c, n + y) for y in range(n)])
    if fam == "PAB":
        a, b = 2 * n, 2 * n + 1
        return Poset.from_relations(2 * n + 2, core + [(x, a) for x in range(n)] + [(b, a)])
    if fam == "PAB_SPLIT":
        a, b = 2 * n, 2 * n + 1
        lt = [(x, y) for x, y in pairs if x < y] + [(x, n + y) for x, y in pairs if x < y]
        lt += [(x, a) for x in range(n)]
        lt += [(x, b) for x in range(n)] + [(n + x, b) for x in range(n)]
        return Poset.from_relations(2 * n + 2, lt)
    raise ValueError(f"unknown poset family {fam!r}")


def gen_poset(spec: FamilySpec) -> Poset:
    if not spec.is_poset:
        raise ValueError(f"{spec.family} is a graph family; use gen_graph")
    p = _base_poset(spec.family, spec.n)
    return dual_poset(p) if spec.dualized else p


def generate(spec: FamilySpec) -> Graph | Poset:
    return gen_poset(spec) if spec.is_poset else gen_graph(spec)


def named_graph(family: str, n: int, complemented: bool = False) -> Graph:
    return gen_graph(FamilySpec(family, n, complemented=complemented))


def named_poset(family: str, n: int, dualized: bool = False) -> Poset:
    return gen_poset(FamilySpec(family, n, dualized=dualized))


# The distinct finite graph families compared pairwise by separating witnesses: G0, G1, G3, G4,
# their complements, GC, GAB and the complement of GAB.  Chain-reversed
# variants coincide with these at finite sizes.
ANTICHAIN_FAMILIES: tuple[FamilySpec, ...] = tuple(
    [FamilySpec(f, 1) for f in ("G0", "G1", "G3", "G4")]
    + [FamilySpec(f, 1, complemented=True) for f in ("G0", "G1", "G3", "G4")]
    + [FamilySpec("GC", 1), FamilySpec("GAB", 1), FamilySpec("GAB", 1, complemented=True)]
)
