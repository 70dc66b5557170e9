import pytest
from hypothesis import given, settings

from minprime.errors import GuardExceeded
from minprime.families import named_graph, named_poset
from minprime.graph_core import Graph, Poset, comparability_graph, complement, incomparability_graph
from minprime.modular import is_prime_graph
from minprime.orientation import (
    critical_pairs,
    is_comparability,
    order_complements,
    order_dimension,
    realizer,
    realizer_intersection,
    transitive_orientations,
)
from oracles import brute_dimension, brute_orientation_count, graphs, posets


class TestOrientations:
    @pytest.mark.parametrize(
        "g, count",
        [(Graph.path(4), 2), (Graph.complete(3), 6), (Graph.cycle(5), 0), (Graph.empty(3), 1)],
    )
    def test_counts(self, g, count):
        assert len(transitive_orientations(g)) == count

    @given(graphs(max_n=6))
    def test_count_matches_brute_force(self, g):
        if g.edge_count() <= 10:
            assert len(transitive_orientations(g)) == brute_orientation_count(g)

    @given(graphs(max_n=7))
    def test_orientations_are_distinct_and_valid(self, g):
        found = transitive_orientations(g).orientations
        assert len(set(found)) == len(found)
        assert all(comparability_graph(p) == g for p in found)
        assert is_comparability(g) == bool(found)

    @given(posets(max_n=6))
    def test_comparability_graphs_recognized(self, p):
        g = comparability_graph(p)
        assert is_comparability(g)
        assert p in transitive_orientations(g).orientations

    @given(graphs(min_n=4, max_n=7))
    def test_prime_comparability_has_two(self, g):
        if is_prime_graph(g).prime and is_comparability(g):
            assert len(transitive_orientations(g)) == 2

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            transitive_orientations(Graph.complete(8), max_edges=20)
        assert is_comparability(Graph.complete(8), max_edges=None)


class TestOrderComplements:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_q1(self, n):
        comps = order_complements(named_poset("Q1", n))
        assert len(comps) == 2
        assert all(comparability_graph(c) == incomparability_graph(named_poset("Q1", n)) for c in comps)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_q3_has_none(self, n):
        assert order_complements(named_poset("Q3", n), max_edges=None) == []
        assert not is_comparability(complement(named_graph("G3", n)), max_edges=None)

    def test_chain(self):
        assert len(order_complements(Poset.chain(4))) == 1


class TestDimension:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_q1_two(self, n):
        assert order_dimension(named_poset("Q1", n)) == 2

    @pytest.mark.parametrize("n", range(3, 6))
    def test_q3_three(self, n):
        assert order_dimension(named_poset("Q3", n)) == 3

    def test_standard_example(self):
        # Q0(n) is the standard example of dimension n.
        assert order_dimension(named_poset("Q0", 3)) == 3
        assert order_dimension(named_poset("Q0", 4)) == 4
        assert order_dimension(named_poset("Q0", 5), k_max=4) is None

    def test_trivial(self):
        assert order_dimension(Poset.chain(5)) == 1
        assert order_dimension(Poset.antichain(4)) == 2

    def test_guards(self):
        with pytest.raises(GuardExceeded):
            order_dimension(Poset.antichain(13))
        with pytest.raises(GuardExceeded):
            order_dimension(Poset.antichain(3), k_max=5)

    @settings(max_examples=30)
    @given(posets(max_n=5))
    def test_matches_brute_force(self, p):
        assert order_dimension(p, k_max=3) == brute_dimension(p, 3)

    @given(posets(max_n=6))
    def test_realizer_intersects_to_poset(self, p):
        d = order_dimension(p, k_max=4)
        orders = realizer(p, d)
        assert len(orders) == d
        assert realizer_intersection(orders, p.n) == p

    @given(posets(max_n=6))
    def test_dimension_two_iff_complement_orientable(self, p):
        if p.n >= 2 and not p.is_chain():
            assert (order_dimension(p) == 2) == is_comparability(incomparability_graph(p))

    def test_critical_pairs_of_antichain(self):
        assert len(critical_pairs(Poset.antichain(3))) == 6
