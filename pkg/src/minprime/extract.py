"""Finite versions of the two Ramsey-style extraction procedures.

``extract_g0_or_g1`` turns a long chain of the neighborhood lattice into an
induced ``G0`` or ``G1`` prefix.  ``extract_g2_or_g3`` works from a maximal
lattice element ``X`` with a large final segment and returns an induced
path (``G2``) or a ``G3`` prefix hanging off a vertex of ``X``.  Every
returned witness is checked edge by edge against the generated family member.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .embed import EmbeddingWitness, max_clique
from .errors import GuardExceeded, SearchInconclusive
from .families import gen_graph, FamilySpec
from .graph_core import Graph, bits, connected_components, popcount
from .lattice import Lattice, longest_chain, neighborhood_lattice, plus_operator
from .modular import is_prime_graph

EXACT_HOMOGENIZE_LIMIT = 40
MAX_LATTICE = 20000
PATH_BUDGET = 10**6


class Kind(str, Enum):
    G0_PREFIX = "G0_PREFIX"
    G1_PREFIX = "G1_PREFIX"
    G2_PREFIX = "G2_PREFIX"
    G3_PREFIX = "G3_PREFIX"
    FAILED_BELOW_THRESHOLD = "FAILED_BELOW_THRESHOLD"

    @property
    def family(self) -> str | None:
        return None if self is Kind.FAILED_BELOW_THRESHOLD else self.value.split("_")[0]


@dataclass(frozen=True)
class ExtractionResult:
    kind: Kind
    m: int
    witness: EmbeddingWitness | None = None
    clique: tuple[int, ...] | None = None
    notes: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return self.kind is Kind.FAILED_BELOW_THRESHOLD

    def verify(self, g: Graph) -> bool:
        if self.failed:
            return True
        h = gen_graph(FamilySpec(self.kind.family, self.m))
        return self.witness is not None and self.witness.verify(h, g)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "m": self.m,
            "witness": None if self.witness is None else list(self.witness.map),
            "clique": None if self.clique is None else list(self.clique),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class PairSequences:
    f0: tuple[int, ...]
    f1: tuple[int, ...]
    chain: tuple[int, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.f0)

    def restrict(self, indices: Sequence[int]) -> "PairSequences":
        return PairSequences(tuple(self.f0[i] for i in indices), tuple(self.f1[i] for i in indices))


def _least(s: int) -> int:
    return (s & -s).bit_length() - 1


def chain_to_pair_sequences(g: Graph, chain: Sequence[int]) -> PairSequences:
    """Sequences ``f0, f1`` read off a strictly increasing chain ``X_0 < ... < X_k``.

    For each ``n < k`` the pair is the lexicographically least ``(a, b)`` with
    ``a`` in ``X_{n+1}``, ``b`` in ``X_n+`` and ``a`` not adjacent to ``b``,
    preferring ``a != b``.
    """
    chain = tuple(chain)
    if len(chain) < 2:
        raise ValueError("chain must have at least two elements")
    for x in chain:
        if x & ~g.vertex_set or plus_operator(g, plus_operator(g, x)) != x:
            raise ValueError(f"{sorted(bits(x))} is not an element of the neighborhood lattice")
    for lo, hi in zip(chain, chain[1:]):
        if lo & ~hi or lo == hi:
            raise ValueError("chain is not strictly increasing")
    f0, f1 = [], []
    for n in range(len(chain) - 1):
        lower_plus = plus_operator(g, chain[n])
        found = None
        fallback = None
        for a in bits(chain[n + 1]):
            misses = lower_plus & ~g.adj[a]
            distinct = misses & ~(1 << a)
            if distinct:
                found = (a, _least(distinct))
                break
            if misses and fallback is None:
                fallback = (a, a)
        pair = found or fallback
        assert pair is not None, "closed chain elements always admit a pair"
        f0.append(pair[0])
        f1.append(pair[1])
    seqs = PairSequences(tuple(f0), tuple(f1), chain)
    _check_chain_invariants(g, seqs)
    return seqs


def _check_chain_invariants(g: Graph, seqs: PairSequences) -> None:
    f0, f1, chain = seqs.f0, seqs.f1, seqs.chain
    k = len(f0)
    for n in range(k):
        assert chain[n + 1] >> f0[n] & 1
        assert plus_operator(g, chain[n]) >> f1[n] & 1
        assert not g.has_edge(f0[n], f1[n])
        for m in range(n + 1, k):
            assert g.has_edge(f0[n], f1[m])
            assert f0[n] != f0[m] and f1[n] != f1[m]


# Positions of the four vertices of a pair (n, m), n < m.
_POSITIONS = ("f0(n)", "f1(n)", "f0(m)", "f1(m)")
_SLOTS = tuple((p, q) for q in range(4) for p in range(q))


@dataclass(frozen=True)
class Block:
    """Equality and adjacency pattern of ``f0(n), f1(n), f0(m), f1(m)`` for ``n < m``."""

    equal: tuple[bool, ...]
    adjacent: tuple[bool, ...]

    def eq(self, p: int, q: int) -> bool:
        return self.equal[_SLOTS.index((min(p, q), max(p, q)))]

    def adj(self, p: int, q: int) -> bool:
        return self.adjacent[_SLOTS.index((min(p, q), max(p, q)))]

    def describe(self) -> dict:
        return {
            "equal": [f"{_POSITIONS[p]}={_POSITIONS[q]}" for (p, q), e in zip(_SLOTS, self.equal) if e],
            "adjacent": [f"{_POSITIONS[p]}~{_POSITIONS[q]}" for (p, q), a in zip(_SLOTS, self.adjacent) if a],
        }


def block_of(g: Graph, seqs: PairSequences, n: int, m: int) -> Block:
    quad = (seqs.f0[n], seqs.f1[n], seqs.f0[m], seqs.f1[m])
    return Block(
        tuple(quad[p] == quad[q] for p, q in _SLOTS),
        tuple(g.has_edge(quad[p], quad[q]) for p, q in _SLOTS),
    )


def occupied_blocks(g: Graph, seqs: PairSequences) -> set[Block]:
    k = len(seqs)
    return {block_of(g, seqs, n, m) for n in range(k) for m in range(n + 1, k)}


def homogenize(
    g: Graph,
    seqs: PairSequences,
    exact: bool | None = None,
    block_filter: Callable[[Block], bool] | None = None,
) -> tuple[list[int], Block | None]:
    """A set ``I`` of indices all of whose pairs lie in one block.

    ``exact`` defaults to an exact maximum search when there are at most 40
    indices, and to the greedy pigeonhole construction otherwise.  With
    ``block_filter`` only accepted blocks are used.  A single index is always
    homogeneous and comes back with block ``None``.
    """
    k = len(seqs)
    if k == 0:
        return [], None
    colour = {
        (n, m): block_of(g, seqs, n, m) for n in range(k) for m in range(n + 1, k)
    }
    allowed = sorted(
        {b for b in colour.values() if block_filter is None or block_filter(b)},
        key=lambda b: (b.equal, b.adjacent),
    )
    if exact is None:
        exact = k <= EXACT_HOMOGENIZE_LIMIT
    best: list[int] = [0]
    best_block: Block | None = None
    if exact:
        for b in allowed:
            h = Graph.from_edges(k, [p for p, c in colour.items() if c == b])
            chosen = sorted(bits(max_clique(h)))
            if len(chosen) > len(best):
                best, best_block = chosen, b
    else:
        best, best_block = _greedy_homogeneous(k, colour, set(allowed), best)
    for i, n in enumerate(best):
        for m in best[i + 1:]:
            assert colour[n, m] == best_block
    return best, best_block


def _greedy_homogeneous(k, colour, allowed, fallback):
    remaining = list(range(k))
    heads: list[tuple[int, Block | None]] = []
    while remaining:
        x = remaining[0]
        classes: dict[Block, list[int]] = {}
        for y in remaining[1:]:
            if colour[x, y] in allowed:
                classes.setdefault(colour[x, y], []).append(y)
        if not classes:
            heads.append((x, None))
            break
        c = max(classes, key=lambda b: (len(classes[b]), b.equal, b.adjacent))
        heads.append((x, c))
        remaining = classes[c]
    best, best_block = fallback, None
    for c in {c for _, c in heads if c is not None}:
        members = [x for x, cx in heads if cx == c]
        tail = heads[-1][0]
        if heads[-1][1] != c:
            members.append(tail)
        if len(members) > len(best):
            best, best_block = sorted(members), c
    return best, best_block


def _independent_sides(b: Block) -> bool:
    # f0 and f1 are independent, and no two of the four vertices coincide.
    return not any(b.equal) and not b.adj(0, 2) and not b.adj(1, 3)


def _lattice(g: Graph) -> Lattice:
    l = neighborhood_lattice(g)
    if len(l) > MAX_LATTICE:
        raise GuardExceeded(f"neighborhood lattice has {len(l)} elements, guard is {MAX_LATTICE}")
    return l


def _finish(g: Graph, kind: Kind, m: int, mapping: Sequence[int], notes=()) -> ExtractionResult:
    result = ExtractionResult(kind, m, EmbeddingWitness(tuple(mapping)), notes=tuple(notes))
    assert result.verify(g), f"extracted {kind.value} witness failed verification"
    return result


def extract_g0_or_g1(g: Graph) -> ExtractionResult:
    """Induced ``G0`` or ``G1`` prefix from a longest chain of the neighborhood lattice."""
    if g.n == 0:
        return ExtractionResult(Kind.FAILED_BELOW_THRESHOLD, 0, notes=("empty graph",))
    length, chain = longest_chain(_lattice(g))
    if length < 2:
        return ExtractionResult(Kind.FAILED_BELOW_THRESHOLD, 0, notes=("chain too short",))
    seqs = chain_to_pair_sequences(g, chain)
    notes = [f"chain length {length}", f"occupied blocks {len(occupied_blocks(g, seqs))}"]
    best: ExtractionResult | None = None
    for kind, cross in ((Kind.G0_PREFIX, True), (Kind.G1_PREFIX, False)):
        index, block = homogenize(
            g, seqs, block_filter=lambda b, c=cross: _independent_sides(b) and b.adj(1, 2) == c
        )
        if block is None:
            continue
        sub = seqs.restrict(index)
        if kind is Kind.G0_PREFIX:
            m = len(index)
            mapping = list(sub.f0) + list(sub.f1)
        else:
            # a_i -> f0(i) for i < m, b_j -> f1(j) for 1 <= j <= m.
            m = len(index) - 1
            mapping = list(sub.f0[:m]) + list(sub.f1[1:])
        if m >= 2 and (best is None or m > best.m):
            best = _finish(g, kind, m, mapping, notes)
    if best is not None:
        return best
    clique = tuple(bits(max_clique(g)))
    notes.append("no independent uniform block of size >= 2")
    return ExtractionResult(Kind.FAILED_BELOW_THRESHOLD, 0, clique=clique, notes=tuple(notes))


def longest_induced_path(g: Graph, within: int, budget: int = PATH_BUDGET) -> list[int]:
    """A longest induced path inside the vertex set ``within``, by exhaustive search."""
    best: list[int] = []
    nodes = 0
    path: list[int] = []

    def grow(blocked: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise SearchInconclusive(f"induced path search exceeded {budget} nodes", nodes)
        if len(path) > len(best):
            best = list(path)
        last = path[-1]
        for v in bits(g.adj[last] & within & ~blocked):
            path.append(v)
            grow(blocked | g.adj[last] | (1 << v))
            path.pop()

    for start in bits(within):
        path.append(start)
        grow(1 << start)
        path.pop()
    return best


def _candidate_xs(l: Lattice, s_threshold: int) -> list[int]:
    counts = [int(c) for c in l.up_counts]
    out: list[int] = []
    for s in sorted({c for c in counts if c >= s_threshold}):
        family = [x for x, c in zip(l.elements, counts) if c >= s]
        maximal = [x for x in family if not any(y != x and x & y == x for y in family)]
        x = min(maximal, key=lambda e: (popcount(e), e))
        if x not in out:
            out.append(x)
    return out


def _component_pairs(g: Graph, x: int, x_plus: int) -> list[tuple[int, int]]:
    pairs = []
    exceptional = 0
    for comp in sorted(connected_components(g, within=x_plus), key=_least):
        for a in bits(comp):
            f = g.adj[a] & ~x_plus
            if f != x:
                pairs.append((a, _least(f & ~x)))
                break
        else:
            exceptional += 1
    assert exceptional <= 1, "two components without a pair would contradict primality"
    return pairs


def _g3_from(g: Graph, x: int, x_plus: int) -> tuple[int, list[int]] | None:
    f0, f1 = [], []
    used = 0
    for a, b in _component_pairs(g, x, x_plus):
        comp = next(c for c in connected_components(g, within=x_plus) if c >> a & 1)
        if comp & used:
            continue
        f0.append(a)
        f1.append(b)
        used |= g.adj[b]
    best = None
    for c in bits(x):
        keep = [i for i, b in enumerate(f1) if not g.has_edge(c, b) and b != c]
        if len(keep) < 2:
            continue
        seqs = PairSequences(tuple(f0[i] for i in keep), tuple(f1[i] for i in keep))
        index, block = homogenize(
            g, seqs, block_filter=lambda b: _independent_sides(b) and not b.adj(0, 3)
        )
        if block is None or (best is not None and len(index) <= best[0]):
            continue
        m = len(index)
        sub = seqs.restrict(index)
        # G3 labels: a_i -> i, b_i -> m + i, c -> 2m; here a_i -> f1(i), b_i -> f0(i).
        best = (m, list(sub.f1) + list(sub.f0) + [c])
    return best


def extract_g2_or_g3(g: Graph, s_threshold: int = 3) -> ExtractionResult:
    """Induced ``G2`` or ``G3`` prefix from maximal lattice elements with large final segments.

    For each threshold ``s >= s_threshold`` the least maximal ``X`` with at
    least ``s`` lattice elements above it is examined.  On ``G' = G[X+]`` the
    longest induced path gives a ``G2`` prefix, and one ``(a_C, b_C)`` pair per
    component, kept only when the component avoids the neighborhoods of
    earlier ``b`` vertices, gives a ``G3`` prefix.  The largest prefix wins.
    """
    report = is_prime_graph(g)
    if not report.prime:
        raise ValueError("extract_g2_or_g3 requires a prime graph")
    l = _lattice(g)
    best: ExtractionResult | None = None
    notes: list[str] = []
    for x in _candidate_xs(l, s_threshold):
        x_plus = plus_operator(g, x)
        notes.append(f"X={sorted(bits(x))} |X+|={popcount(x_plus)}")
        path = longest_induced_path(g, x_plus)
        m = len(path) // 2
        if m >= 2 and (best is None or m > best.m):
            best = _finish(g, Kind.G2_PREFIX, m, path[: 2 * m])
        if x:
            found = _g3_from(g, x, x_plus)
            if found is not None and found[0] >= 2 and (best is None or found[0] > best.m):
                best = _finish(g, Kind.G3_PREFIX, found[0], found[1])
    if best is None:
        return ExtractionResult(
            Kind.FAILED_BELOW_THRESHOLD, 0, clique=tuple(bits(max_clique(g))), notes=tuple(notes)
        )
    return ExtractionResult(best.kind, best.m, best.witness, notes=tuple(notes))
