"""Transitive orientations, order complements and order dimension by exact search."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import GuardExceeded
from .graph_core import Graph, Poset, bits, comparability_graph, full_set, incomparability_graph

DEFAULT_MAX_EDGES = 64


@dataclass(frozen=True)
class OrientationSet:
    graph: Graph
    orientations: tuple[Poset, ...]

    def __len__(self) -> int:
        return len(self.orientations)

    def __iter__(self):
        return iter(self.orientations)


class _Contradiction(Exception):
    pass


def _propagate(g: Graph, out: list[int], queue: list[tuple[int, int]]) -> None:
    """Close the partial orientation ``out`` under the forcing rules.

    ``u -> v`` forces ``u -> w`` for every neighbor ``w`` of ``u`` not adjacent
    to ``v``, forces ``w -> v`` for every neighbor ``w`` of ``v`` not adjacent
    to ``u``, and transitivity forces the third edge of any oriented 2-path
    whose ends are adjacent.
    """
    while queue:
        u, v = queue.pop()
        forced = []
        for w in bits(g.adj[u] & ~g.adj[v] & ~(1 << v)):
            forced.append((u, w))
        for w in bits(g.adj[v] & ~g.adj[u] & ~(1 << u)):
            forced.append((w, v))
        for w in bits(out[v] & g.adj[u]):
            forced.append((u, w))
        into_u = [w for w in bits(g.adj[u] & g.adj[v]) if out[w] >> u & 1]
        for w in into_u:
            forced.append((w, v))
        for a, b in forced:
            if out[b] >> a & 1:
                raise _Contradiction
            if not out[a] >> b & 1:
                out[a] |= 1 << b
                queue.append((a, b))


def _orient(g: Graph, out: list[int], a: int, b: int) -> list[int] | None:
    trial = list(out)
    if trial[b] >> a & 1:
        return None
    trial[a] |= 1 << b
    try:
        _propagate(g, trial, [(a, b)])
    except _Contradiction:
        return None
    return trial


def _is_transitive(out: list[int]) -> bool:
    return all(out[v] & ~out[u] == 0 for u in range(len(out)) for v in bits(out[u]))


def _search(g: Graph, first_only: bool, max_edges: int | None) -> list[Poset]:
    edges = g.edges()
    if max_edges is not None and len(edges) > max_edges:
        raise GuardExceeded(f"{len(edges)} edges exceed the orientation guard of {max_edges}")
    found: list[Poset] = []
    stack = [[0] * g.n]
    while stack:
        out = stack.pop()
        pending = next(
            ((u, v) for u, v in edges if not (out[u] >> v & 1 or out[v] >> u & 1)), None
        )
        if pending is None:
            if _is_transitive(out):
                found.append(Poset(g.n, tuple(out)))
                if first_only:
                    break
            continue
        u, v = pending
        # Push the reverse branch first so u -> v is explored first.
        for a, b in ((v, u), (u, v)):
            nxt = _orient(g, out, a, b)
            if nxt is not None:
                stack.append(nxt)
    return found


def transitive_orientations(
    g: Graph, max_edges: int | None = DEFAULT_MAX_EDGES
) -> OrientationSet:
    """All transitive orientations of ``g``; pass ``max_edges=None`` to lift the guard."""
    posets = _search(g, first_only=False, max_edges=max_edges)
    for p in posets:
        assert comparability_graph(p) == g
    return OrientationSet(g, tuple(posets))


def is_comparability(g: Graph, max_edges: int | None = DEFAULT_MAX_EDGES) -> bool:
    return bool(_search(g, first_only=True, max_edges=max_edges))


def order_complements(p: Poset, max_edges: int | None = DEFAULT_MAX_EDGES) -> list[Poset]:
    return list(transitive_orientations(incomparability_graph(p), max_edges=max_edges))


def critical_pairs(p: Poset) -> list[tuple[int, int]]:
    """Ordered pairs ``(a, b)`` of incomparable elements with ``D(a) <= D(b)`` and ``U(b) <= U(a)``.

    A family of linear extensions realizes ``p`` iff each critical pair
    ``(a, b)`` has ``b`` below ``a`` in some member.
    """
    down = p.down
    out = []
    for a in range(p.n):
        for b in range(p.n):
            if a == b or p.up[a] >> b & 1 or p.up[b] >> a & 1:
                continue
            if down[a] & ~down[b] == 0 and p.up[b] & ~p.up[a] == 0:
                out.append((a, b))
    return out


def _add_constraint(reach_up: list[int], reach_down: list[int], lo: int, hi: int):
    """Add ``lo < hi`` to a transitively closed relation; ``None`` on a cycle."""
    if reach_up[hi] >> lo & 1 or lo == hi:
        return None
    if reach_up[lo] >> hi & 1:
        return reach_up, reach_down
    up = list(reach_up)
    down = list(reach_down)
    lows = reach_down[lo] | (1 << lo)
    highs = reach_up[hi] | (1 << hi)
    for x in bits(lows):
        up[x] |= highs
    for y in bits(highs):
        down[y] |= lows
    return up, down


def order_dimension(p: Poset, k_max: int = 4, max_elements: int = 12) -> int | None:
    """Least ``k <= k_max`` such that ``k`` linear extensions intersect to ``p``.

    Returns ``None`` when the dimension exceeds ``k_max``.  Critical pairs are
    distributed among ``k`` extensions by backtracking, each extension kept as
    a transitively closed constraint set that must stay acyclic.
    """
    if p.n > max_elements:
        raise GuardExceeded(f"poset has {p.n} elements, dimension guard is {max_elements}")
    if k_max > 4:
        raise GuardExceeded(f"k_max={k_max} exceeds the supported bound of 4")
    if p.n <= 1 or p.is_chain():
        return 1 if k_max >= 1 else None
    pairs = critical_pairs(p)
    for k in range(2, k_max + 1):
        if _distribute(p, pairs, k) is not None:
            return k
    return None


def _distribute(p: Poset, pairs, k: int):
    """Assign every critical pair to one of ``k`` constraint sets, or ``None``.

    Colours are opened in order, which removes the symmetry between unused ones.
    """
    base = (list(p.up), list(p.down))

    def assign(i: int, states, used: int):
        if i == len(pairs):
            return states
        a, b = pairs[i]
        for c in range(used):
            if states[c][0][b] >> a & 1:
                return assign(i + 1, states, used)
        for c in range(min(used + 1, k)):
            nxt = _add_constraint(states[c][0], states[c][1], b, a)
            if nxt is None:
                continue
            new_states = list(states)
            new_states[c] = nxt
            done = assign(i + 1, new_states, max(used, c + 1))
            if done is not None:
                return done
        return None

    return assign(0, [base] * k, 0)


def realizer(p: Poset, k: int) -> list[list[int]] | None:
    """An explicit realizer with ``k`` linear extensions (element orders), or ``None``."""
    if p.is_chain():
        return [list(_topological(list(p.up), list(p.down), p.n))] * k if k >= 1 else None
    states = _distribute(p, critical_pairs(p), k)
    if states is None:
        return None
    return [_topological(up, down, p.n) for up, down in states]


def _topological(up: list[int], down: list[int], n: int) -> list[int]:
    # Any linear extension of the closed relation: sort by size of down-set.
    return sorted(range(n), key=lambda v: (bin(down[v]).count("1"), v))


def realizer_intersection(orders: list[list[int]], n: int) -> Poset:
    up = [full_set(n)] * n
    for order in orders:
        pos = {v: i for i, v in enumerate(order)}
        for u in range(n):
            above = sum(1 << v for v in range(n) if pos[v] > pos[u])
            up[u] &= above
    return Poset(n, tuple(up))
