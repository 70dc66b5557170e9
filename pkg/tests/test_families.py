import pytest

from minprime.families import (
    ANTICHAIN_FAMILIES,
    GRAPH_FAMILIES,
    POSET_FAMILIES,
    PRIME_THRESHOLD,
    FamilySpec,
    gen_graph,
    gen_poset,
    generate,
    named_graph,
    named_poset,
    parse_family_ref,
)
from minprime.graph_core import Graph, comparability_graph, complement, dual_poset
from minprime.modular import is_prime_graph
from minprime.orientation import is_comparability
from oracles import brute_is_prime, brute_isomorphic


class TestParsing:
    def test_round_trip(self):
        spec = parse_family_ref("family:g1:6:complement")
        assert spec == FamilySpec("G1", 6, complemented=True)
        assert str(spec) == "family:g1:6:complement"
        assert parse_family_ref("family:Q3:4:dual").dualized

    @pytest.mark.parametrize(
        "ref",
        ["g1:6", "family:g1", "family:zz:3", "family:g1:0", "family:g1:3:dual", "family:q1:3:complement", "family:g1:x"],
    )
    def test_rejects(self, ref):
        with pytest.raises(ValueError):
            parse_family_ref(ref)

    def test_kind_mismatch(self):
        with pytest.raises(ValueError):
            gen_graph(FamilySpec("Q0", 3))
        with pytest.raises(ValueError):
            gen_poset(FamilySpec("G0", 3))


@pytest.mark.parametrize("n", range(1, 7))
class TestSizes:
    def test_graph_sizes(self, n):
        extra = {"G3": 1, "GC": 1, "GAB": 2}
        for fam in GRAPH_FAMILIES:
            assert named_graph(fam, n).n == 2 * n + extra.get(fam, 0)

    def test_poset_sizes(self, n):
        extra = {"Q3": 1, "PC": 1, "PAB": 2, "PAB_SPLIT": 2}
        for fam in POSET_FAMILIES:
            assert named_poset(fam, n).n == 2 * n + extra.get(fam, 0)


class TestShapes:
    def test_g0_is_crown(self):
        g = named_graph("G0", 4)
        assert all(g.degree(v) == 3 for v in range(8))

    def test_g1_half_graph(self):
        g = named_graph("G1", 4)
        assert sorted(g.degree(v) for v in range(4)) == [1, 2, 3, 4]

    def test_g2_is_path(self):
        assert named_graph("G2", 3) == Graph.path(6)

    def test_gab_one_is_p4(self):
        assert brute_isomorphic(named_graph("GAB", 1), Graph.path(4))

    def test_k_has_universal_vertex(self):
        for n in range(2, 6):
            g = named_graph("K", n)
            assert g.degree(0) == g.n - 1
            assert not is_prime_graph(g).prime

    def test_complement_flag(self):
        assert named_graph("G3", 3, complemented=True) == complement(named_graph("G3", 3))
        assert named_poset("Q1", 3, dualized=True) == dual_poset(named_poset("Q1", 3))

    def test_generate_dispatch(self):
        assert generate(FamilySpec("Q2", 2)) == named_poset("Q2", 2)


class TestPrimality:
    @pytest.mark.parametrize("fam", sorted(PRIME_THRESHOLD))
    def test_prime_from_threshold(self, fam):
        for n in range(PRIME_THRESHOLD[fam], 7):
            g = named_graph(fam, n)
            assert is_prime_graph(g).prime, (fam, n)
            assert is_prime_graph(complement(g)).prime, (fam, n)

    @pytest.mark.parametrize("fam", sorted(PRIME_THRESHOLD))
    def test_against_brute_force_small(self, fam):
        for n in range(1, 4):
            g = named_graph(fam, n)
            if g.n <= 8:
                assert is_prime_graph(g).prime == brute_is_prime(g)

    def test_below_threshold(self):
        for fam in ("G0", "G1", "G2", "G3", "G4", "GC"):
            for n in range(1, PRIME_THRESHOLD[fam]):
                assert not is_prime_graph(named_graph(fam, n)).prime
        # The smallest GAB member is already prime.
        assert is_prime_graph(named_graph("GAB", 1)).prime


class TestPosets:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_q_families_orient_g_families(self, n):
        for i in range(4):
            assert comparability_graph(named_poset(f"Q{i}", n)) == named_graph(f"G{i}", n)

    @pytest.mark.parametrize("n", range(1, 6))
    def test_comparability_identities(self, n):
        assert comparability_graph(named_poset("PC", n)) == named_graph("GC", n)
        assert comparability_graph(named_poset("PAB", n)) == named_graph("GAB", n)
        assert comparability_graph(named_poset("P2", n)) == complement(named_graph("G2", n))
        assert brute_isomorphic(
            comparability_graph(named_poset("P1", n)), complement(named_graph("G1", n))
        ) if n <= 3 else is_comparability(complement(named_graph("G1", n)))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_pab_split_is_order_complement(self, n):
        g = comparability_graph(named_poset("PAB_SPLIT", n))
        swap = [n + x for x in range(n)] + list(range(n)) + [2 * n, 2 * n + 1]
        assert g.relabel(swap) == complement(named_graph("GAB", n))


def test_antichain_families_distinct():
    assert len(ANTICHAIN_FAMILIES) == 11
    graphs = {gen_graph(s.with_n(5)) for s in ANTICHAIN_FAMILIES}
    assert len(graphs) == 11
