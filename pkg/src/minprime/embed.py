"""Induced-subgraph embedding, family prefixes, extremal sets and separating witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .census import canonical_form, canonical_graph
from .errors import GuardExceeded, SearchInconclusive
from .families import FamilySpec, gen_graph
from .graph_core import Graph, bits, complement, full_set, induced, popcount

DEFAULT_BUDGET = 10**6
MAX_EXTREMAL_VERTICES = 128


@dataclass(frozen=True)
class EmbeddingWitness:
    """``map[v]`` is the image of pattern vertex ``v``."""

    map: tuple[int, ...]

    def verify(self, h: Graph, g: Graph) -> bool:
        f = self.map
        if len(f) != h.n or len(set(f)) != h.n or any(not 0 <= x < g.n for x in f):
            return False
        return all(
            h.has_edge(u, v) == g.has_edge(f[u], f[v]) for u in range(h.n) for v in range(u + 1, h.n)
        )


def _pattern_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        # Lowest degree first, then the vertex most adjacent to those already placed.
        v = min(remaining, key=lambda x: (-popcount(h.adj[x] & placed), h.degree(x), x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def induced_embedding(h: Graph, g: Graph, budget: int = DEFAULT_BUDGET) -> EmbeddingWitness | None:
    """An injective map sending edges to edges and non-edges to non-edges, or ``None``.

    ``None`` means the search was exhaustive.  More than ``budget`` search
    nodes raise :class:`SearchInconclusive`.
    """
    if h.n > g.n:
        return None
    if h.n == 0:
        return EmbeddingWitness(())
    g_deg = [g.degree(v) for v in range(g.n)]
    static = []
    for p in range(h.n):
        d = h.degree(p)
        co = h.n - 1 - d
        s = 0
        for v in range(g.n):
            if g_deg[v] >= d and g.n - 1 - g_deg[v] >= co:
                s |= 1 << v
        if not s:
            return None
        static.append(s)
    order = _pattern_order(h)
    everything = full_set(g.n)
    f = [-1] * h.n
    nodes = 0

    def candidates(k: int, used: int) -> int:
        p = order[k]
        allowed = static[p] & ~used
        for q in order[:k]:
            target = f[q]
            if h.adj[p] >> q & 1:
                allowed &= g.adj[target]
            else:
                allowed &= everything & ~g.adj[target]
            if not allowed:
                break
        return allowed

    def search(k: int, used: int) -> bool:
        nonlocal nodes
        if k == h.n:
            return True
        for v in bits(candidates(k, used)):
            nodes += 1
            if nodes > budget:
                raise SearchInconclusive(f"embedding search exceeded {budget} nodes", nodes)
            f[order[k]] = v
            if search(k + 1, used | (1 << v)):
                return True
        f[order[k]] = -1
        return False

    if not search(0, 0):
        return None
    witness = EmbeddingWitness(tuple(f))
    assert witness.verify(h, g)
    return witness


def _as_spec(family: str | FamilySpec) -> FamilySpec:
    return family if isinstance(family, FamilySpec) else FamilySpec(family, 1)


def largest_family_prefix(
    g: Graph, family: str | FamilySpec, k_max: int, budget: int = DEFAULT_BUDGET
) -> tuple[int, EmbeddingWitness | None]:
    """Largest ``m <= k_max`` such that the size-``m`` member of ``family`` is induced in ``g``.

    Members of a family form an increasing chain under induced embedding, so
    the answer is found by binary search.  Returns ``(0, None)`` when not even
    the first member embeds.
    """
    spec = _as_spec(family)
    lo, hi = 0, k_max
    best: EmbeddingWitness | None = None
    while lo < hi:
        mid = (lo + hi + 1) // 2
        w = induced_embedding(gen_graph(spec.with_n(mid)), g, budget=budget)
        if w is not None:
            lo, best = mid, w
        else:
            hi = mid - 1
    return lo, best


def max_clique(g: Graph) -> int:
    """A maximum clique as a bitset, by branch and bound with a greedy colouring bound."""
    best = 0
    best_size = 0

    def colour_bound(cand: int) -> list[tuple[int, int]]:
        # Greedy colouring; returns (vertex, colour count up to it) in colour order.
        out = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~g.adj[v] & ~(1 << v)
                rest &= ~(1 << v)
                out.append((v, colour))
        return out

    def expand(clique: int, size: int, cand: int) -> None:
        nonlocal best, best_size
        if not cand:
            if size > best_size:
                best, best_size = clique, size
            return
        for v, bound in reversed(colour_bound(cand)):
            if size + bound <= best_size:
                return
            expand(clique | (1 << v), size + 1, cand & g.adj[v])
            cand &= ~(1 << v)

    expand(0, 0, g.vertex_set)
    return best


def extremal_sets(g: Graph) -> tuple[list[int], list[int]]:
    """A maximum clique and a maximum independent set, both verified."""
    if g.n > MAX_EXTREMAL_VERTICES:
        raise GuardExceeded(f"{g.n} vertices exceed the extremal-set guard of {MAX_EXTREMAL_VERTICES}")
    clique = max_clique(g)
    indep = max_clique(complement(g))
    for u in bits(clique):
        assert clique & ~(1 << u) & ~g.adj[u] == 0
    for u in bits(indep):
        assert indep & g.adj[u] == 0
    return list(bits(clique)), list(bits(indep))


@dataclass(frozen=True)
class Separation:
    graph: Graph
    fam_a: FamilySpec
    fam_b: FamilySpec
    into_a: EmbeddingWitness
    probe_max: int
    caveat: str = (
        "non-embedding was checked against finite truncations only; "
        "it is evidence for the infinite statement, not a proof"
    )

    @property
    def size(self) -> int:
        return self.graph.n


@lru_cache(maxsize=None)
def _induced_classes(spec: FamilySpec, k: int) -> tuple[tuple[Graph, tuple[int, ...]], ...]:
    """Isomorphism classes of ``k``-vertex induced subgraphs, with the vertex subset realizing each."""
    host = gen_graph(spec)
    found: dict[int, tuple[int, ...]] = {}
    for subset in combinations(range(host.n), k):
        sub = induced(host, subset, keep_order=True)
        code = canonical_form(sub)
        if code not in found:
            found[code] = subset
    return tuple(
        (induced(host, found[c], keep_order=True), found[c]) for c in sorted(found)
    )


def separating_witness(
    fam_a: str | FamilySpec,
    fam_b: str | FamilySpec,
    size_max: int = 6,
    n_probe: int = 8,
    probe_max: int = 12,
    budget: int = DEFAULT_BUDGET,
) -> Separation | None:
    """Smallest graph induced in ``fam_a(n_probe)`` but in no ``fam_b(m)``, ``m <= probe_max``.

    Candidates are taken by increasing size and then by canonical code.
    Because the members of ``fam_b`` increase under embedding, testing
    against ``fam_b(probe_max)`` covers every smaller ``m``.
    """
    a = _as_spec(fam_a).with_n(n_probe)
    b_host = gen_graph(_as_spec(fam_b).with_n(probe_max))
    for k in range(1, size_max + 1):
        for sub, subset in _induced_classes(a, k):
            if induced_embedding(sub, b_host, budget=budget) is None:
                h = canonical_graph(sub)
                into_a = induced_embedding(h, gen_graph(a), budget=budget)
                assert into_a is not None
                return Separation(h, a, _as_spec(fam_b), into_a, probe_max)
    return None
