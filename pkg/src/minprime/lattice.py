"""Galois lattices, the neighborhood lattice, Ferrers tests and codings.

A :class:`Lattice` is a family of subsets of ``0..universe_size-1`` (bitsets)
closed under intersection and containing the universe, ordered by
inclusion.  Elements are kept sorted by ``(cardinality, bitset value)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._ordersearch import find_order_map, verify_order_map
from .errors import GuardExceeded, SearchInconclusive
from .graph_core import Graph, IncidenceStructure, bits, full_set, popcount

DEFAULT_MAX_ELEMENTS = 2000


def _canonical_key(s: int) -> tuple[int, int]:
    return popcount(s), s


@dataclass(frozen=True)
class Lattice:
    universe_size: int
    elements: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})

    @classmethod
    def from_family(cls, universe_size: int, family) -> "Lattice":
        return cls(universe_size, tuple(sorted(set(family), key=_canonical_key)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def index(self, x: int) -> int:
        return self._index[x]

    @property
    def top(self) -> int:
        return self.elements[-1]

    @property
    def bottom(self) -> int:
        return self.elements[0]

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean matrix ``(len, universe_size)``; row ``i`` is element ``i``."""
        m = np.zeros((len(self.elements), self.universe_size), dtype=np.int32)
        for i, x in enumerate(self.elements):
            for v in bits(x):
                m[i, v] = 1
        return m

    @cached_property
    def subset_matrix(self) -> np.ndarray:
        """``S[i, j]`` is true iff element ``i`` is contained in element ``j``."""
        m = self.membership
        inter = m @ m.T
        sizes = m.sum(axis=1)
        return inter == sizes[:, None]

    def subset_blocks(self, width: int = 1024):
        """Yield ``(start, block)`` with ``block[i, j]`` true iff element ``i`` lies in element ``start + j``.

        Column blocks keep memory linear in the lattice size.
        """
        m = self.membership
        sizes = m.sum(axis=1)
        for start in range(0, len(self.elements), width):
            inter = m @ m[start:start + width].T
            yield start, inter == sizes[:, None]

    @cached_property
    def up_counts(self) -> np.ndarray:
        """``|up(X)|`` for every element, the number of elements containing it."""
        counts = np.zeros(len(self.elements), dtype=np.int64)
        for _, block in self.subset_blocks():
            counts += block.sum(axis=1)
        return counts

    def up_sets(self) -> list[int]:
        """Strict up-sets as bitsets over element indices (the order used by searches)."""
        s = self.subset_matrix.copy()
        np.fill_diagonal(s, False)
        out = []
        for row in s:
            idx = np.flatnonzero(row)
            out.append(sum(1 << int(j) for j in idx))
        return out

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse diagram as index pairs ``(i, j)`` with element ``i`` covered by ``j``."""
        up = self.up_sets()
        out = []
        for i, row in enumerate(up):
            indirect = 0
            for k in bits(row):
                indirect |= up[k]
            out.extend((i, j) for j in bits(row & ~indirect))
        return tuple(out)

    def is_intersection_closed(self) -> bool:
        members = set(self.elements)
        return all(x & y in members for x in self.elements for y in self.elements)

    def is_chain(self) -> bool:
        return all(
            (a & b) == a for a, b in zip(self.elements, self.elements[1:])
        )

    def to_dict(self) -> dict:
        return {
            "universe": self.universe_size,
            "elements": [list(bits(x)) for x in self.elements],
            "covers": [list(c) for c in self.covers],
        }


def _close_under_intersection(universe: int, generators) -> set[int]:
    # Adding a generator c to an intersection-closed family L yields L | {x & c}.
    family = {universe}
    for c in dict.fromkeys(generators):
        if c in family:
            continue
        family |= {x & c for x in family}
    return family


def galois_lattice(r: IncidenceStructure) -> Lattice:
    """All intersections of the column sets ``R^-1(y)``, together with ``E``."""
    return Lattice.from_family(
        r.e_size, _close_under_intersection(full_set(r.e_size), r.columns())
    )


def neighborhood_lattice(g: Graph) -> Lattice:
    return galois_lattice(IncidenceStructure.of_graph(g))


def plus_operator(g: Graph, x) -> int:
    """``X+``: the common neighbors of ``X``; the whole vertex set when ``X`` is empty."""
    s = x if isinstance(x, int) else sum(1 << v for v in x)
    out = g.vertex_set
    for v in bits(s):
        out &= g.adj[v]
    return out


def up_set(l: Lattice, x: int) -> list[int]:
    """The final segment generated by ``x``: members of ``l`` containing ``x``."""
    return [y for y in l.elements if x & y == x]


def is_ferrers(r: IncidenceStructure) -> tuple[bool, tuple[int, int, int, int] | None]:
    """Ferrers test; on failure returns a violating ``(x, x', y, y')``.

    The violation satisfies ``x rho y``, ``x' rho y'``, not ``x rho y'`` and
    not ``x' rho y``.
    """
    rows = r.rows
    for x in range(r.e_size):
        for x2 in range(x + 1, r.e_size):
            only_x = rows[x] & ~rows[x2]
            only_x2 = rows[x2] & ~rows[x]
            if only_x and only_x2:
                y = (only_x & -only_x).bit_length() - 1
                y2 = (only_x2 & -only_x2).bit_length() - 1
                return False, (x, x2, y, y2)
    return True, None


def longest_chain(l: Lattice) -> tuple[int, tuple[int, ...]]:
    """Longest strictly increasing chain, as (number of elements, elements bottom-up).

    Dynamic programming over the inclusion DAG in canonical order, which is a
    linear extension.  Ties keep the earliest predecessor.
    """
    if not l.elements:
        return 0, ()
    k = len(l.elements)
    best = np.ones(k, dtype=np.int64)
    pred = np.full(k, -1, dtype=np.int64)
    for start, block in l.subset_blocks():
        for jj in range(block.shape[1]):
            j = start + jj
            below = np.flatnonzero(block[:j, jj])
            if below.size:
                i = below[np.argmax(best[below])]
                best[j] = best[i] + 1
                pred[j] = i
    j = int(np.argmax(best))
    chain = []
    while j >= 0:
        chain.append(l.elements[j])
        j = int(pred[j])
    chain.reverse()
    assert all(a & b == a and a != b for a, b in zip(chain, chain[1:]))
    return len(chain), tuple(chain)


def _guard(*lattices: Lattice, max_elements: int) -> None:
    for l in lattices:
        if len(l) > max_elements:
            raise GuardExceeded(f"lattice has {len(l)} elements, guard is {max_elements}")


def anti_isomorphism(
    a: Lattice, b: Lattice, max_elements: int = DEFAULT_MAX_ELEMENTS, budget: int = 10**6
) -> dict[int, int] | None:
    """Inclusion-reversing bijection from ``a`` onto ``b`` (as element -> element) or ``None``."""
    _guard(a, b, max_elements=max_elements)
    up_a = a.up_sets()
    down_b = _downs(b.up_sets())
    f = find_order_map(up_a, down_b, bijective=True, budget=budget)
    if f is None:
        return None
    assert verify_order_map(up_a, down_b, f)
    return {a.elements[i]: b.elements[j] for i, j in f.items()}


def _downs(up: list[int]) -> list[int]:
    down = [0] * len(up)
    for u, row in enumerate(up):
        for v in bits(row):
            down[v] |= 1 << u
    return down


def is_self_dual(
    l: Lattice, max_elements: int = DEFAULT_MAX_ELEMENTS, budget: int = 10**6
) -> tuple[bool, dict[int, int] | None]:
    f = anti_isomorphism(l, l, max_elements=max_elements, budget=budget)
    return f is not None, f


def dual_galois_check(
    r: IncidenceStructure, max_elements: int = DEFAULT_MAX_ELEMENTS, budget: int = 10**6
) -> bool:
    """Whether ``Gal(R^-1)`` is anti-isomorphic to ``Gal(R)``, by explicit search."""
    return anti_isomorphism(
        galois_lattice(r.inverse()), galois_lattice(r), max_elements=max_elements, budget=budget
    ) is not None


def order_embeds(
    a: Lattice, b: Lattice, max_elements: int = DEFAULT_MAX_ELEMENTS, budget: int = 10**6
) -> dict[int, int] | None:
    """Injective map preserving and reflecting inclusion, element -> element, or ``None``."""
    _guard(a, b, max_elements=max_elements)
    up_a, up_b = a.up_sets(), b.up_sets()
    f = find_order_map(up_a, up_b, budget=budget)
    if f is None:
        return None
    assert verify_order_map(up_a, up_b, f)
    return {a.elements[i]: b.elements[j] for i, j in f.items()}


def is_order_isomorphic(a: Lattice, b: Lattice, budget: int = 10**6) -> bool:
    if len(a) != len(b):
        return False
    return find_order_map(a.up_sets(), b.up_sets(), bijective=True, budget=budget) is not None


@dataclass(frozen=True)
class CodingWitness:
    """Maps ``f: E -> E'`` and ``g: F -> F'`` with ``x rho y`` iff ``f(x) rho' g(y)``."""

    f: tuple[int, ...]
    g: tuple[int, ...]

    def verify(self, small: IncidenceStructure, big: IncidenceStructure) -> bool:
        return all(
            small.related(x, y) == big.related(self.f[x], self.g[y])
            for x in range(small.e_size)
            for y in range(small.f_size)
        )


def find_coding(
    small: IncidenceStructure, big: IncidenceStructure, budget: int = 10**7
) -> CodingWitness | None:
    """Search for a coding of ``small`` into ``big``.

    ``f`` is assigned row by row; for every column ``y`` the set of columns
    of ``big`` still compatible with the assigned rows is tracked, and a
    branch dies as soon as one of these sets empties.  ``g`` is then read off
    as the least compatible column.  Returns ``None`` only after an
    exhaustive search; raises ``SearchInconclusive`` past ``budget`` nodes.
    """
    e, f_size = small.e_size, small.f_size
    full_b = full_set(big.f_size)
    if f_size and not big.f_size:
        return None
    if e == 0:
        return CodingWitness((), (0,) * f_size)
    # Rows of big with identical R'(x') are interchangeable; try one of each.
    reps: dict[int, int] = {}
    for x2, row in enumerate(big.rows):
        reps.setdefault(row, x2)
    choices = sorted(reps.items(), key=lambda kv: kv[1])
    if not choices:
        return None
    nodes = 0
    assignment: list[int] = []

    def search(x: int, feasible: tuple[int, ...]) -> tuple[int, ...] | None:
        nonlocal nodes
        if x == e:
            return feasible
        row = small.rows[x]
        for big_row, x2 in choices:
            nodes += 1
            if nodes > budget:
                raise SearchInconclusive(f"coding search exceeded {budget} nodes", nodes)
            nxt = tuple(
                fy & (big_row if row >> y & 1 else full_b & ~big_row)
                for y, fy in enumerate(feasible)
            )
            if all(nxt):
                assignment.append(x2)
                done = search(x + 1, nxt)
                if done is not None:
                    return done
                assignment.pop()
        return None

    final = search(0, tuple(full_b for _ in range(f_size)))
    if final is None:
        return None
    witness = CodingWitness(
        tuple(assignment), tuple((fy & -fy).bit_length() - 1 for fy in final)
    )
    assert witness.verify(small, big)
    return witness
