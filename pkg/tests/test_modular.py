from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from minprime.census import enumerate_graphs, enumerate_posets
from minprime.families import named_graph, named_poset
from minprime.graph_core import Graph, Poset, comparability_graph, complement, full_set, to_bitset
from minprime.modular import (
    autonomous_closure,
    autonomous_closure_poset,
    is_autonomous,
    is_autonomous_poset,
    is_point_determining,
    is_prime_graph,
    is_prime_poset,
    point_determining_quotient,
)
from minprime.lattice import neighborhood_lattice
from oracles import brute_autonomous_sets, brute_is_prime, brute_poset_is_prime, graphs, posets

P4 = Graph.path(4)
K22 = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


class TestAutonomous:
    @given(graphs(max_n=6))
    def test_trivial_sets(self, g):
        assert is_autonomous(g, 0)
        assert is_autonomous(g, g.vertex_set)
        assert all(is_autonomous(g, 1 << v) for v in range(g.n))

    def test_g0_pair_of_a_vertices(self):
        # b0 is adjacent to a1 but not to a0.
        assert not is_autonomous(named_graph("G0", 4), {0, 1})

    @pytest.mark.parametrize("n", [3, 5])
    def test_complete_graph(self, n):
        g = Graph.complete(n)
        for k in range(n + 1):
            for a in combinations(range(n), k):
                assert is_autonomous(g, a)

    def test_closure_examples(self):
        assert autonomous_closure(Graph.complete(5), {1, 3}) == 0b1010
        for pair in combinations(range(4), 2):
            assert autonomous_closure(P4, pair) == 0b1111

    @given(graphs(max_n=7), st.data())
    def test_closure_is_least_autonomous_superset(self, g, data):
        seed = data.draw(st.integers(0, full_set(g.n)))
        closed = autonomous_closure(g, seed)
        assert closed & seed == seed and is_autonomous(g, closed)
        supersets = [to_bitset(a) for a in brute_autonomous_sets(g) if to_bitset(a) & seed == seed]
        assert all(closed & s == closed for s in supersets)

    @given(posets(max_n=6), st.data())
    def test_poset_closure(self, p, data):
        seed = data.draw(st.integers(0, full_set(p.n)))
        closed = autonomous_closure_poset(p, seed)
        assert closed & seed == seed and is_autonomous_poset(p, closed)


class TestPrimality:
    def test_p4(self):
        r = is_prime_graph(P4)
        assert r.prime and r.indecomposable and r.witness is None

    def test_three_vertex_graphs_not_prime(self):
        for g in enumerate_graphs(3):
            assert not is_prime_graph(g).prime

    def test_small_sizes(self):
        r = is_prime_graph(Graph.empty(1))
        assert not r.prime and r.trivial_size and r.indecomposable
        assert is_prime_graph(Graph.complete(2)).indecomposable

    def test_one_prime_class_on_four_vertices(self):
        primes = [g for g in enumerate_graphs(4) if is_prime_graph(g).prime]
        assert len(primes) == 1
        assert primes[0].edge_count() == 3 and max(primes[0].degree(v) for v in range(4)) == 2

    def test_witness_is_autonomous(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)])
        r = is_prime_graph(K22)
        assert not r.prime and is_autonomous(K22, r.witness)
        assert 2 <= len(r.witness_vertices) < 4
        assert is_prime_graph(g).prime == brute_is_prime(g)

    @given(graphs(max_n=7))
    def test_matches_brute_force(self, g):
        assert is_prime_graph(g).prime == brute_is_prime(g)

    @given(graphs(max_n=7))
    def test_complement_invariance(self, g):
        assert is_prime_graph(g).prime == is_prime_graph(complement(g)).prime

    def test_prime_graphs_are_point_determining(self):
        for n in range(4, 8):
            for g in enumerate_graphs(n, "prime"):
                assert is_point_determining(g)


class TestPointDetermining:
    def test_examples(self):
        assert not is_point_determining(K22)
        assert is_point_determining(P4)

    def test_quotient_examples(self):
        q, classes = point_determining_quotient(K22)
        assert q == Graph.complete(2) and classes == [0b0011, 0b1100]
        q, classes = point_determining_quotient(P4)
        assert q == P4 and all(bin(c).count("1") == 1 for c in classes)

    @given(graphs(max_n=6))
    def test_quotient_preserves_lattice_size(self, g):
        q, _ = point_determining_quotient(g)
        assert is_point_determining(q)
        assert len(neighborhood_lattice(q)) == len(neighborhood_lattice(g))


class TestPosetPrimality:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_chain(self, n):
        assert not is_prime_poset(Poset.chain(n)).prime

    @pytest.mark.parametrize("n", range(3, 7))
    def test_q0(self, n):
        assert is_prime_poset(named_poset("Q0", n)).prime

    def test_agrees_with_comparability_graph(self):
        for n in range(1, 6):
            for p in enumerate_posets(n):
                assert is_prime_poset(p).prime == is_prime_graph(comparability_graph(p)).prime

    @given(posets(max_n=6))
    def test_matches_brute_force(self, p):
        assert is_prime_poset(p).prime == brute_poset_is_prime(p)
