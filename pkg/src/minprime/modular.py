"""Autonomous sets, primality and the point-determining quotient."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph_core import Graph, Poset, bits, popcount, to_bitset


@dataclass(frozen=True)
class PrimalityReport:
    """Outcome of a primality test.

    ``indecomposable`` follows the convention that graphs on at most two
    vertices are indecomposable; ``prime`` additionally requires ``n >= 4``.
    ``witness`` is a smallest nontrivial autonomous set when one exists.
    """

    prime: bool
    indecomposable: bool
    witness: int | None
    trivial_size: bool

    @property
    def witness_vertices(self) -> list[int] | None:
        return None if self.witness is None else list(bits(self.witness))


def _graph_separators(g: Graph, s: int) -> int:
    out = 0
    outside = g.vertex_set & ~s
    for v in bits(outside):
        hit = g.adj[v] & s
        if hit and hit != s:
            out |= 1 << v
    return out


def _poset_separators(p: Poset, down: tuple[int, ...], s: int) -> int:
    out = 0
    for v in range(p.n):
        if s >> v & 1:
            continue
        above = p.up[v] & s
        below = down[v] & s
        if (above and above != s) or (below and below != s):
            out |= 1 << v
    return out


def is_autonomous(g: Graph, a) -> bool:
    s = a if isinstance(a, int) else to_bitset(a)
    return _graph_separators(g, s) == 0


def is_autonomous_poset(p: Poset, a) -> bool:
    s = a if isinstance(a, int) else to_bitset(a)
    return _poset_separators(p, p.down, s) == 0


def autonomous_closure(g: Graph, seed) -> int:
    """Smallest autonomous set containing ``seed``.

    Every external vertex that separates two current members is added, all
    separators of a round at once, until no separator remains.
    """
    s = seed if isinstance(seed, int) else to_bitset(seed)
    while True:
        sep = _graph_separators(g, s)
        if not sep:
            return s
        s |= sep


def autonomous_closure_poset(p: Poset, seed) -> int:
    s = seed if isinstance(seed, int) else to_bitset(seed)
    down = p.down
    while True:
        sep = _poset_separators(p, down, s)
        if not sep:
            return s
        s |= sep


def _report(n: int, full: int, closure) -> PrimalityReport:
    witness = None
    for u, v in combinations(range(n), 2):
        c = closure((1 << u) | (1 << v))
        if c != full and (
            witness is None or (popcount(c), list(bits(c))) < (popcount(witness), list(bits(witness)))
        ):
            witness = c
    indecomposable = witness is None
    return PrimalityReport(
        prime=indecomposable and n >= 4,
        indecomposable=indecomposable,
        witness=witness,
        trivial_size=n <= 3,
    )


def is_prime_graph(g: Graph) -> PrimalityReport:
    return _report(g.n, g.vertex_set, lambda s: autonomous_closure(g, s))


def is_prime_poset(p: Poset) -> PrimalityReport:
    down = p.down
    full = (1 << p.n) - 1

    def closure(s: int) -> int:
        while True:
            sep = _poset_separators(p, down, s)
            if not sep:
                return s
            s |= sep

    return _report(p.n, full, closure)


def is_point_determining(g: Graph) -> bool:
    return len(set(g.adj)) == g.n


def point_determining_quotient(g: Graph) -> tuple[Graph, list[int]]:
    """Quotient by equality of neighborhoods.

    Returns the quotient graph and its classes (bitsets); quotient vertex ``i``
    is the class ``classes[i]``, classes being ordered by least member.
    """
    by_nbhd: dict[int, int] = {}
    for v in range(g.n):
        by_nbhd[g.adj[v]] = by_nbhd.get(g.adj[v], 0) | (1 << v)
    classes = sorted(by_nbhd.values(), key=lambda c: (c & -c))
    rep_index = {}
    for i, c in enumerate(classes):
        for v in bits(c):
            rep_index[v] = i
    adj = []
    for c in classes:
        rep = (c & -c).bit_length() - 1
        adj.append(to_bitset({rep_index[w] for w in bits(g.adj[rep])}))
    return Graph(len(classes), tuple(adj)), classes
