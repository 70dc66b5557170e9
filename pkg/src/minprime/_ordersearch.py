"""Backtracking search for order embeddings and isomorphisms between finite posets.

Posets are given as lists of strict up-set bitsets over ``0..n-1``.  A map
``f`` is accepted when ``a < a'`` iff ``f(a) < f(a')`` for all placed pairs
and ``f`` is injective.
"""
from __future__ import annotations

from .errors import SearchInconclusive
from .graph_core import bits, popcount


def _down_sets(up: list[int]) -> list[int]:
    down = [0] * len(up)
    for u, row in enumerate(up):
        for v in bits(row):
            down[v] |= 1 << u
    return down


def _cover_counts(up: list[int]) -> tuple[list[int], list[int]]:
    n = len(up)
    upper = [0] * n
    lower = [0] * n
    for u in range(n):
        indirect = 0
        for w in bits(up[u]):
            indirect |= up[w]
        for v in bits(up[u] & ~indirect):
            upper[u] += 1
            lower[v] += 1
    return upper, lower


def find_order_map(
    up_a: list[int],
    up_b: list[int],
    bijective: bool = False,
    budget: int = 10**6,
) -> dict[int, int] | None:
    """Return an order embedding (or isomorphism) from ``a`` into ``b``, or ``None``.

    Raises ``SearchInconclusive`` when more than ``budget`` nodes are visited.
    """
    na, nb = len(up_a), len(up_b)
    if na > nb or (bijective and na != nb):
        return None
    if na == 0:
        return {}
    down_a, down_b = _down_sets(up_a), _down_sets(up_b)
    ua = [popcount(r) for r in up_a]
    da = [popcount(r) for r in down_a]
    ub = [popcount(r) for r in up_b]
    db = [popcount(r) for r in down_b]

    if bijective:
        if sorted(zip(ua, da)) != sorted(zip(ub, db)):
            return None
        ca_up, ca_low = _cover_counts(up_a)
        cb_up, cb_low = _cover_counts(up_b)
        key_a = [(ua[i], da[i], ca_up[i], ca_low[i]) for i in range(na)]
        key_b = [(ub[j], db[j], cb_up[j], cb_low[j]) for j in range(nb)]
        if sorted(key_a) != sorted(key_b):
            return None
        by_key: dict[tuple, int] = {}
        for j, k in enumerate(key_b):
            by_key[k] = by_key.get(k, 0) | (1 << j)
        static = [by_key.get(key_a[i], 0) for i in range(na)]
    else:
        static = []
        for i in range(na):
            s = 0
            for j in range(nb):
                if ub[j] >= ua[i] and db[j] >= da[i]:
                    s |= 1 << j
            static.append(s)
    if any(s == 0 for s in static):
        return None

    # Place elements with few candidates first, then those most tied to placed ones.
    order: list[int] = []
    placed = 0
    remaining = set(range(na))
    while remaining:
        def rank(i):
            tied = popcount((up_a[i] | down_a[i]) & placed)
            return (-tied, popcount(static[i]), i)

        nxt = min(remaining, key=rank)
        order.append(nxt)
        placed |= 1 << nxt
        remaining.discard(nxt)

    f: dict[int, int] = {}
    nodes = 0

    def candidates(a: int, used: int) -> int:
        allowed = static[a] & ~used
        for a2, b2 in f.items():
            if up_a[a2] >> a & 1:
                allowed &= up_b[b2]
            elif down_a[a2] >> a & 1:
                allowed &= down_b[b2]
            else:
                allowed &= ~(up_b[b2] | down_b[b2])
            if not allowed:
                break
        return allowed

    # Iterative depth-first search; lattices can exceed the recursion limit.
    used = 0
    stack = [bits(candidates(order[0], 0))]
    while stack:
        a = order[len(stack) - 1]
        if a in f:
            used &= ~(1 << f.pop(a))
        b = next(stack[-1], None)
        if b is None:
            stack.pop()
            continue
        nodes += 1
        if nodes > budget:
            raise SearchInconclusive(f"order search exceeded {budget} nodes", nodes)
        f[a] = b
        used |= 1 << b
        if len(stack) == na:
            return dict(f)
        stack.append(bits(candidates(order[len(stack)], used)))
    return None


def verify_order_map(up_a: list[int], up_b: list[int], f: dict[int, int]) -> bool:
    if len(set(f.values())) != len(f) or len(f) != len(up_a):
        return False
    for a in range(len(up_a)):
        for a2 in range(len(up_a)):
            if bool(up_a[a] >> a2 & 1) != bool(up_b[f[a]] >> f[a2] & 1):
                return False
    return True
