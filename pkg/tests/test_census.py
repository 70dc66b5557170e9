import random

import pytest
from hypothesis import given

from minprime.census import (
    all_labelled_graphs,
    brute_force_class_count,
    brute_force_code,
    canonical_form,
    canonical_graph,
    canonical_poset,
    enumerate_graphs,
    enumerate_posets,
    poset_canonical_form,
)
from minprime.errors import GuardExceeded
from minprime.graph_core import Graph, Poset
from oracles import brute_isomorphic, graphs, posets

# Independently known class counts (OEIS A000088, A033995, A000112).
GRAPH_COUNTS = [1, 1, 2, 4, 11, 34, 156, 1044]
BIPARTITE_COUNTS = [1, 1, 2, 3, 7, 13, 35, 88]
POSET_COUNTS = [1, 1, 2, 5, 16, 63, 318]


def _shuffle(g: Graph, seed: int) -> Graph:
    order = list(range(g.n))
    random.Random(seed).shuffle(order)
    return g.relabel(order)


class TestCanonicalForm:
    @given(graphs(max_n=7))
    def test_invariant_under_relabelling(self, g):
        for seed in range(3):
            assert canonical_form(_shuffle(g, seed)) == canonical_form(g)

    @given(graphs(max_n=6), graphs(max_n=6))
    def test_agrees_with_brute_force_equivalence(self, a, b):
        if a.n == b.n:
            same = brute_force_code(a) == brute_force_code(b)
            assert (canonical_form(a) == canonical_form(b)) == same

    @given(graphs(max_n=6))
    def test_canonical_graph_isomorphic(self, g):
        c = canonical_graph(g)
        assert brute_isomorphic(c, g)
        assert canonical_graph(c) == c

    @given(posets(max_n=6))
    def test_poset_invariant(self, p):
        order = list(range(p.n))
        random.Random(1).shuffle(order)
        assert poset_canonical_form(p.relabel(order)) == poset_canonical_form(p)
        assert canonical_poset(canonical_poset(p)) == canonical_poset(p)

    def test_chain_and_antichain_differ(self):
        assert poset_canonical_form(Poset.chain(3)) != poset_canonical_form(Poset.antichain(3))


class TestEnumeration:
    @pytest.mark.parametrize("n", range(8))
    def test_graph_counts(self, n):
        assert len(list(enumerate_graphs(n))) == GRAPH_COUNTS[n]

    @pytest.mark.parametrize("n", range(6))
    def test_counts_match_brute_force(self, n):
        assert brute_force_class_count(n) == GRAPH_COUNTS[n]

    @pytest.mark.parametrize("n", range(8))
    def test_bipartite_counts(self, n):
        assert len(list(enumerate_graphs(n, "bipartite"))) == BIPARTITE_COUNTS[n]

    @pytest.mark.parametrize("n", range(7))
    def test_poset_counts(self, n):
        assert len(list(enumerate_posets(n))) == POSET_COUNTS[n]

    def test_prime_counts(self):
        # Prime graph classes on 4, 5, 6 vertices (OEIS A079473).
        assert [len(list(enumerate_graphs(n, "prime"))) for n in (4, 5, 6)] == [1, 4, 26]

    def test_every_labelled_graph_is_represented(self):
        codes = {canonical_form(g) for g in enumerate_graphs(4)}
        labelled = list(all_labelled_graphs(4))
        assert len(labelled) == 64
        assert {canonical_form(g) for g in labelled} == codes

    def test_guards(self):
        with pytest.raises(GuardExceeded):
            list(enumerate_graphs(9))
        with pytest.raises(ValueError):
            list(enumerate_graphs(3, "trees"))
        with pytest.raises(GuardExceeded):
            list(enumerate_posets(8))
