"""Finite graphs, posets and incidence structures over vertices ``0..n-1``.

Vertex sets are Python ints used as bitsets: bit ``v`` is set iff ``v`` is a
member.  All three types are frozen dataclasses; every operation returns a new
value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def bits(s: int) -> Iterator[int]:
    """Iterate the members of bitset ``s`` in increasing order."""
    while s:
        low = s & -s
        yield low.bit_length() - 1
        s ^= low


def to_bitset(vertices: Iterable[int]) -> int:
    s = 0
    for v in vertices:
        s |= 1 << v
    return s


def popcount(s: int) -> int:
    return bin(s).count("1")


def full_set(n: int) -> int:
    return (1 << n) - 1


def _as_bitset(a, n: int) -> int:
    if isinstance(a, int):
        s = a
    else:
        s = to_bitset(a)
    if s < 0 or s >> n:
        raise ValueError(f"vertex set {a!r} not contained in 0..{n - 1}")
    return s


@dataclass(frozen=True)
class Graph:
    """Simple undirected loopless graph; ``adj[v]`` is the neighborhood bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, row in enumerate(self.adj):
            if row >> self.n or row < 0:
                raise ValueError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for w in bits(row):
                if not self.adj[w] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{v}, {w}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = full_set(n)
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def vertex_set(self) -> int:
        return full_set(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is vertex ``order[i]`` of this graph."""
        return induced(self, order, keep_order=True)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Poset:
    """Strict partial order; ``up[u]`` is the bitset of all ``v`` with ``u < v``."""

    n: int
    up: tuple[int, ...]

    def __post_init__(self):
        if len(self.up) != self.n:
            raise ValueError("relation length does not match n")
        for u, row in enumerate(self.up):
            if row < 0 or row >> self.n:
                raise ValueError(f"element {u} related to something outside 0..{self.n - 1}")
            if row >> u & 1:
                raise ValueError(f"relation is reflexive at {u}")
            for v in bits(row):
                if self.up[v] >> u & 1:
                    raise ValueError(f"relation not antisymmetric at ({u}, {v})")
                if self.up[v] & ~row:
                    raise ValueError(f"relation not transitive through {u} < {v}")

    @classmethod
    def from_relations(cls, n: int, lt: Iterable[Sequence[int]]) -> "Poset":
        """Build from the full strict relation; transitivity is checked, not closed."""
        up = [0] * n
        for u, v in lt:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"pair ({u}, {v}) out of range for n={n}")
            up[u] |= 1 << v
        return cls(n, tuple(up))

    @classmethod
    def from_cover_pairs(cls, n: int, covers: Iterable[Sequence[int]]) -> "Poset":
        """Build from generating pairs by taking the transitive closure."""
        up = [0] * n
        for u, v in covers:
            up[u] |= 1 << v
        changed = True
        while changed:
            changed = False
            for u in range(n):
                closed = up[u]
                for v in bits(up[u]):
                    closed |= up[v]
                if closed != up[u]:
                    up[u] = closed
                    changed = True
        return cls(n, tuple(up))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, tuple(full_set(n) & ~full_set(u + 1) for u in range(n)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, (0,) * n)

    @property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for u in range(self.n):
            for v in bits(self.up[u]):
                down[v] |= 1 << u
        return tuple(down)

    def lt(self, u: int, v: int) -> bool:
        return bool(self.up[u] >> v & 1)

    def relations(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.up[u])]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(u, v)`` with ``u`` covered by ``v``."""
        out = []
        for u in range(self.n):
            above = self.up[u]
            indirect = 0
            for w in bits(above):
                indirect |= self.up[w]
            out.extend((u, v) for v in bits(above & ~indirect))
        return out

    def is_chain(self) -> bool:
        return all(
            (self.up[u] | self.down[u]) | (1 << u) == full_set(self.n) for u in range(self.n)
        )

    def relabel(self, order: Sequence[int]) -> "Poset":
        pos = {v: i for i, v in enumerate(order)}
        return Poset(self.n, tuple(to_bitset(pos[w] for w in bits(self.up[v])) for v in order))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, lt={self.relations()})"


@dataclass(frozen=True)
class IncidenceStructure:
    """Triple ``(E, rho, F)``; ``rows[x]`` is the bitset ``R(x)`` of ``y`` with ``x rho y``."""

    e_size: int
    f_size: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.e_size:
            raise ValueError("row count does not match e_size")
        for x, r in enumerate(self.rows):
            if r < 0 or r >> self.f_size:
                raise ValueError(f"row {x} has entries outside 0..{self.f_size - 1}")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> "IncidenceStructure":
        e = len(matrix)
        f = len(matrix[0]) if e else 0
        rows = []
        for row in matrix:
            if len(row) != f:
                raise ValueError("ragged incidence matrix")
            rows.append(to_bitset(j for j, b in enumerate(row) if b))
        return cls(e, f, tuple(rows))

    @classmethod
    def from_predicate(cls, e_size: int, f_size: int, pred) -> "IncidenceStructure":
        return cls(
            e_size,
            f_size,
            tuple(to_bitset(y for y in range(f_size) if pred(x, y)) for x in range(e_size)),
        )

    @classmethod
    def of_graph(cls, g: Graph) -> "IncidenceStructure":
        """The symmetric structure ``(V, E, V)`` whose columns are the neighborhoods."""
        return cls(g.n, g.n, g.adj)

    def related(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def columns(self) -> tuple[int, ...]:
        """``R^-1(y)`` for each ``y`` in ``F``, as bitsets over ``E``."""
        cols = [0] * self.f_size
        for x, r in enumerate(self.rows):
            for y in bits(r):
                cols[y] |= 1 << x
        return tuple(cols)

    def inverse(self) -> "IncidenceStructure":
        return IncidenceStructure(self.f_size, self.e_size, self.columns())

    def negation(self) -> "IncidenceStructure":
        full = full_set(self.f_size)
        return IncidenceStructure(self.e_size, self.f_size, tuple(full & ~r for r in self.rows))

    def matrix(self) -> list[list[int]]:
        return [[int(self.related(x, y)) for y in range(self.f_size)] for x in range(self.e_size)]


def complement(g: Graph) -> Graph:
    full = g.vertex_set
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced(g: Graph, a, keep_order: bool = False) -> Graph:
    """Subgraph induced on ``a``, relabelled to ``0..|a|-1``.

    By default the members of ``a`` keep their relative order.  With
    ``keep_order=True`` and a sequence ``a``, vertex ``i`` of the result is
    ``a[i]`` (used for explicit relabelling).
    """
    if keep_order and not isinstance(a, int):
        order = list(a)
        if len(set(order)) != len(order):
            raise ValueError("repeated vertex in relabelling order")
        for v in order:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} out of range for n={g.n}")
    else:
        order = list(bits(_as_bitset(a, g.n)))
    pos = {v: i for i, v in enumerate(order)}
    chosen = to_bitset(order)
    return Graph(
        len(order), tuple(to_bitset(pos[w] for w in bits(g.adj[v] & chosen)) for v in order)
    )


def neighborhood(g: Graph, x: int) -> int:
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range for n={g.n}")
    return g.adj[x]


def comparability_graph(p: Poset) -> Graph:
    down = p.down
    return Graph(p.n, tuple(p.up[v] | down[v] for v in range(p.n)))


def incomparability_graph(p: Poset) -> Graph:
    return complement(comparability_graph(p))


def dual_poset(p: Poset) -> Poset:
    return Poset(p.n, p.down)


def induced_poset(p: Poset, a) -> Poset:
    order = list(bits(_as_bitset(a, p.n)))
    pos = {v: i for i, v in enumerate(order)}
    chosen = to_bitset(order)
    return Poset(len(order), tuple(to_bitset(pos[w] for w in bits(p.up[v] & chosen)) for v in order))


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Components of ``g`` restricted to ``within`` (default: all vertices), by least member."""
    remaining = g.vertex_set if within is None else within
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(connected_components(g)) == 1


def bipartition(g: Graph) -> tuple[int, int] | None:
    """A 2-colouring ``(side0, side1)`` or ``None`` when ``g`` has an odd cycle."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    side0 = to_bitset(v for v in range(g.n) if color[v] == 0)
    return side0, g.vertex_set & ~side0


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None
