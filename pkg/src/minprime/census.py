"""Canonical forms and isomorphism-free enumeration of small graphs and posets.

The canonical code of a graph is the lexicographically least adjacency
bit-string over all vertex orders that list the cells of the colour-refined
partition in their canonical order.  The bit-string enumerates the upper
triangle column by column: ``(0,1), (0,2), (1,2), (0,3), ...``, so every
prefix is fixed once the first vertices are placed and the search prunes on
prefixes.  Transposing two twins within a cell is an automorphism, so twins
are only placed in increasing label order.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .errors import GuardExceeded
from .graph_core import Graph, Poset, bits, is_bipartite, popcount
from .modular import is_prime_graph

MAX_ENUMERATION_N = 8


def _refine(n: int, out_rows: tuple[int, ...], in_rows: tuple[int, ...]) -> list[int]:
    colors = [(popcount(out_rows[v]), popcount(in_rows[v])) for v in range(n)]
    palette = {c: i for i, c in enumerate(sorted(set(colors)))}
    col = [palette[c] for c in colors]
    while True:
        sigs = [
            (
                col[v],
                tuple(sorted(col[w] for w in bits(out_rows[v]))),
                tuple(sorted(col[w] for w in bits(in_rows[v]))),
            )
            for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(col)):
            return new
        col = new


def _canonical(n: int, out_rows: tuple[int, ...], directed: bool) -> tuple[int, tuple[int, ...]]:
    if n == 0:
        return 0, ()
    if directed:
        in_rows = [0] * n
        for u in range(n):
            for v in bits(out_rows[u]):
                in_rows[v] |= 1 << u
        in_rows = tuple(in_rows)
    else:
        in_rows = out_rows
    col = _refine(n, out_rows, in_rows)
    cells: list[list[int]] = [[] for _ in range(max(col) + 1)]
    for v in range(n):
        cells[col[v]].append(v)
    cell_at = [c for c, cell in enumerate(cells) for _ in cell]

    def twins(u: int, v: int) -> bool:
        mask = ~((1 << u) | (1 << v))
        if out_rows[u] & mask != out_rows[v] & mask or in_rows[u] & mask != in_rows[v] & mask:
            return False
        return bool(out_rows[u] >> v & 1) == bool(out_rows[v] >> u & 1)

    smaller_twins = [
        sum(1 << u for u in cells[col[v]] if u < v and twins(u, v)) for v in range(n)
    ]

    def segment(order: list[int], v: int) -> int:
        seg = 0
        for u in order:
            seg <<= 1
            seg |= out_rows[u] >> v & 1
            if directed:
                seg <<= 1
                seg |= out_rows[v] >> u & 1
        return seg

    best_segments: list[int] | None = None
    best_order: list[int] = []
    order: list[int] = []
    segs: list[int] = []

    def search(placed: int, tight: bool) -> None:
        nonlocal best_segments, best_order
        k = len(order)
        if k == n:
            if best_segments is None or not tight:
                best_segments = list(segs)
                best_order = list(order)
            return
        for v in cells[cell_at[k]]:
            if placed >> v & 1 or smaller_twins[v] & ~placed:
                continue
            seg = segment(order, v)
            still_tight = False
            if best_segments is not None and tight:
                if seg > best_segments[k]:
                    continue
                still_tight = seg == best_segments[k]
            order.append(v)
            segs.append(seg)
            search(placed | (1 << v), still_tight)
            order.pop()
            segs.pop()
            # A strictly better branch tightens the bound for its siblings.
            if best_segments is not None and not tight:
                tight = True
                if segs != best_segments[:k]:
                    tight = False

    search(0, False)
    assert best_segments is not None
    code = 0
    width = 2 if directed else 1
    for k, seg in enumerate(best_segments):
        code = (code << (width * k)) | seg
    return code, tuple(best_order)


def canonical_form(g: Graph) -> int:
    """Canonical code; two graphs on the same vertex count are isomorphic iff codes agree."""
    return _canonical_cached(g.n, g.adj)


@lru_cache(maxsize=1 << 18)
def _canonical_cached(n: int, adj: tuple[int, ...]) -> int:
    return _canonical(n, adj, directed=False)[0]


def canonical_graph(g: Graph) -> Graph:
    """The representative of the isomorphism class of ``g`` (vertices in canonical order)."""
    _, order = _canonical(g.n, g.adj, directed=False)
    return g.relabel(order)


def poset_canonical_form(p: Poset) -> int:
    return _canonical(p.n, p.up, directed=True)[0]


def canonical_poset(p: Poset) -> Poset:
    _, order = _canonical(p.n, p.up, directed=True)
    return p.relabel(order)


def brute_force_code(g: Graph) -> int:
    """Least code over all ``n!`` vertex orders; independent check of :func:`canonical_form`."""
    best = None
    for order in permutations(range(g.n)):
        code = 0
        for j in range(g.n):
            for i in range(j):
                code = (code << 1) | (g.adj[order[i]] >> order[j] & 1)
        if best is None or code < best:
            best = code
    return best or 0


def _extend(g: Graph, nbhd: int) -> Graph:
    n = g.n
    adj = [row | ((nbhd >> v & 1) << n) for v, row in enumerate(g.adj)]
    adj.append(nbhd)
    return Graph(n + 1, tuple(adj))


def _classes(n: int, bipartite_only: bool) -> list[Graph]:
    if n == 0:
        return [Graph.empty(0)]
    seen: dict[int, Graph] = {}
    for h in _classes_cached(n - 1, bipartite_only):
        for nbhd in range(1 << (n - 1)):
            g = _extend(h, nbhd)
            if bipartite_only and not is_bipartite(g):
                continue
            code = canonical_form(g)
            if code not in seen:
                seen[code] = g
    return [canonical_graph(seen[c]) for c in sorted(seen)]


@lru_cache(maxsize=None)
def _classes_cached(n: int, bipartite_only: bool) -> tuple[Graph, ...]:
    return tuple(_classes(n, bipartite_only))


def enumerate_graphs(n: int, filter: str = "all") -> Iterator[Graph]:
    """One representative per isomorphism class of graphs on ``n`` vertices.

    ``filter`` is ``"all"``, ``"bipartite"`` or ``"prime"``.  Classes are
    produced by adding one vertex in every possible way to the classes on
    ``n - 1`` vertices and keeping one graph per canonical code.
    """
    if n > MAX_ENUMERATION_N:
        raise GuardExceeded(f"enumeration is limited to n <= {MAX_ENUMERATION_N}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if filter not in ("all", "bipartite", "prime"):
        raise ValueError(f"unknown filter {filter!r}")
    if filter == "bipartite":
        yield from _classes_cached(n, True)
        return
    for g in _classes_cached(n, False):
        if filter == "prime" and not is_prime_graph(g).prime:
            continue
        yield g


def brute_force_class_count(n: int) -> int:
    """Number of isomorphism classes by brute force over all labelled graphs (small ``n``)."""
    pairs = [(i, j) for j in range(n) for i in range(j)]
    seen = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
        seen.add(brute_force_code(g))
    return len(seen)


@lru_cache(maxsize=None)
def _poset_classes(n: int) -> tuple[Poset, ...]:
    if n == 0:
        return (Poset(0, ()),)
    seen: dict[int, Poset] = {}
    for q in _poset_classes(n - 1):
        down = q.down
        # The new element is maximal; its strict down-set is any order ideal of q.
        for ideal in range(1 << (n - 1)):
            if any(down[v] & ~ideal for v in bits(ideal)):
                continue
            up = tuple(row | ((ideal >> v & 1) << (n - 1)) for v, row in enumerate(q.up)) + (0,)
            p = Poset(n, up)
            code = poset_canonical_form(p)
            if code not in seen:
                seen[code] = p
    return tuple(canonical_poset(seen[c]) for c in sorted(seen))


def enumerate_posets(n: int) -> Iterator[Poset]:
    """One representative per isomorphism class of posets on ``n`` elements."""
    if n > 7:
        raise GuardExceeded("poset enumeration is limited to n <= 7")
    yield from _poset_classes(n)


def all_labelled_graphs(n: int) -> Iterator[Graph]:
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
