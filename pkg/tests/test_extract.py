import random

import pytest
from hypothesis import assume, given, settings

from minprime.embed import induced_embedding
from minprime.extract import (
    Block,
    ExtractionResult,
    Kind,
    PairSequences,
    chain_to_pair_sequences,
    extract_g0_or_g1,
    extract_g2_or_g3,
    homogenize,
    longest_induced_path,
    occupied_blocks,
)
from minprime.families import FamilySpec, gen_graph, named_graph
from minprime.graph_core import Graph, bits, full_set, induced
from minprime.lattice import longest_chain, neighborhood_lattice, plus_operator
from minprime.modular import is_prime_graph
from oracles import brute_isomorphic, graphs


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p])


def _assert_pair_invariants(g: Graph, seqs: PairSequences) -> None:
    # Checked from scratch, without the library's own assertions.
    chain, f0, f1 = seqs.chain, seqs.f0, seqs.f1
    for n in range(len(f0)):
        assert f0[n] in set(bits(chain[n + 1]))
        common = set(range(g.n))
        for v in bits(chain[n]):
            common &= {w for w in range(g.n) if g.has_edge(v, w)}
        assert f1[n] in common
        assert not g.has_edge(f0[n], f1[n])
        for m in range(n + 1, len(f0)):
            assert g.has_edge(f0[n], f1[m])
            assert f0[n] != f0[m] and f1[n] != f1[m]


def _check_result(g: Graph, r: ExtractionResult) -> None:
    assert r.verify(g)
    if not r.failed:
        h = gen_graph(FamilySpec(r.kind.family, r.m))
        image = list(r.witness.map)
        assert brute_isomorphic(induced(g, image, keep_order=True), h) if h.n <= 7 else induced_embedding(
            h, induced(g, image, keep_order=True)
        ) is not None


class TestPairSequences:
    def test_two_element_chain(self):
        g = named_graph("G1", 3)
        l = neighborhood_lattice(g)
        seqs = chain_to_pair_sequences(g, [l.bottom, l.top])
        assert len(seqs) == 1

    def test_rejects_non_closed(self):
        g = Graph.path(4)
        with pytest.raises(ValueError):
            chain_to_pair_sequences(g, [0, 0b0001])
        with pytest.raises(ValueError):
            chain_to_pair_sequences(g, [0b1111, 0])
        with pytest.raises(ValueError):
            chain_to_pair_sequences(g, [0])

    def test_invariants_on_random_graphs(self):
        rng = random.Random(7)
        tested = 0
        while tested < 1000:
            g = _random_graph(rng, rng.randint(4, 12), rng.uniform(0.2, 0.8))
            length, chain = longest_chain(neighborhood_lattice(g))
            if length < 4:
                continue
            _assert_pair_invariants(g, chain_to_pair_sequences(g, chain))
            tested += 1

    @given(graphs(min_n=2, max_n=7))
    def test_invariants_hypothesis(self, g):
        length, chain = longest_chain(neighborhood_lattice(g))
        assume(length >= 2)
        _assert_pair_invariants(g, chain_to_pair_sequences(g, chain))


class TestHomogenize:
    @pytest.mark.parametrize("k", [4, 8, 12])
    def test_g1_already_uniform(self, k):
        g = named_graph("G1", k)
        seqs = chain_to_pair_sequences(g, longest_chain(neighborhood_lattice(g))[1])
        # The steps out of the empty set and into V are forced off the pattern; the rest is uniform.
        interior = seqs.restrict(range(1, len(seqs) - 1))
        assert len(occupied_blocks(g, interior)) == 1
        index, block = homogenize(g, seqs)
        assert len(index) == len(seqs) - 2 and isinstance(block, Block)
        assert homogenize(g, interior)[0] == list(range(len(interior)))

    @settings(max_examples=40)
    @given(graphs(min_n=4, max_n=8))
    def test_exact_dominates_greedy(self, g):
        length, chain = longest_chain(neighborhood_lattice(g))
        assume(length >= 3)
        seqs = chain_to_pair_sequences(g, chain)
        exact, b1 = homogenize(g, seqs, exact=True)
        greedy, b2 = homogenize(g, seqs, exact=False)
        assert len(exact) >= len(greedy) >= 1
        for index, block in ((exact, b1), (greedy, b2)):
            for i, n in enumerate(index):
                for m in index[i + 1:]:
                    assert block is not None
                    assert occupied_blocks(g, seqs.restrict([n, m])) == {block}

    def test_empty(self):
        assert homogenize(Graph.empty(0), PairSequences((), ())) == ([], None)


class TestG0G1:
    def test_g0_12(self):
        g = named_graph("G0", 12)
        r = extract_g0_or_g1(g)
        assert r.kind is Kind.G0_PREFIX and r.m >= 3 and r.verify(g)

    def test_g1_12(self):
        g = named_graph("G1", 12)
        r = extract_g0_or_g1(g)
        assert r.kind is Kind.G1_PREFIX and r.m >= 3 and r.verify(g)

    def test_k2_fails(self):
        r = extract_g0_or_g1(Graph.complete(2))
        assert r.kind is Kind.FAILED_BELOW_THRESHOLD and r.failed

    def test_g1_monotone(self):
        ms = [extract_g0_or_g1(named_graph("G1", n)).m for n in range(6, 17)]
        assert ms == sorted(ms) and ms[0] >= 2

    @settings(max_examples=40)
    @given(graphs(min_n=4, max_n=8))
    def test_prime_graphs_verify(self, g):
        assume(is_prime_graph(g).prime)
        _check_result(g, extract_g0_or_g1(g))


class TestG2G3:
    def test_g2_15(self):
        g = named_graph("G2", 15)
        r = extract_g2_or_g3(g, 3)
        assert r.kind is Kind.G2_PREFIX and r.m >= 5 and r.verify(g)

    def test_g3_15(self):
        g = named_graph("G3", 15)
        r = extract_g2_or_g3(g, 3)
        assert r.kind is Kind.G3_PREFIX and r.m >= 3 and r.verify(g)

    def test_p4(self):
        r = extract_g2_or_g3(Graph.path(4), 3)
        assert r.kind is Kind.G2_PREFIX and r.m == 2

    def test_requires_prime(self):
        with pytest.raises(ValueError):
            extract_g2_or_g3(Graph.complete(3))

    @settings(max_examples=40)
    @given(graphs(min_n=4, max_n=8))
    def test_prime_graphs_verify(self, g):
        assume(is_prime_graph(g).prime)
        _check_result(g, extract_g2_or_g3(g))

    def test_result_dict(self):
        d = extract_g2_or_g3(Graph.path(4)).to_dict()
        assert d["kind"] == "G2_PREFIX" and len(d["witness"]) == 4


class TestInducedPath:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_path(self, n):
        assert len(longest_induced_path(Graph.path(n), full_set(n))) == n

    def test_cycle(self):
        assert len(longest_induced_path(Graph.cycle(7), full_set(7))) == 6

    @given(graphs(min_n=1, max_n=7))
    def test_result_is_induced_path(self, g):
        path = longest_induced_path(g, g.vertex_set)
        assert induced(g, path, keep_order=True) == Graph.path(len(path))

    def test_plus_operator_restriction(self):
        g = named_graph("G3", 4)
        apex = 1 << 8
        x_plus = plus_operator(g, apex)
        assert longest_induced_path(g, x_plus) and len(longest_induced_path(g, x_plus)) == 1
