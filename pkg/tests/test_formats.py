import json

import pytest
from hypothesis import given

from minprime.families import named_graph, named_poset
from minprime.formats import dumps, from_dict, load, loads, to_dict, to_dot
from minprime.graph_core import Graph
from minprime.lattice import neighborhood_lattice
from oracles import graphs, posets


@given(graphs(max_n=7))
def test_graph_round_trip(g):
    assert loads(dumps(g)) == g


@given(posets(max_n=6))
def test_poset_round_trip(p):
    assert loads(dumps(p)) == p


def test_dumps_is_stable():
    g = Graph.path(3)
    assert dumps(g) == '{"edges": [[0, 1], [1, 2]], "n": 3, "type": "graph"}'


def test_lattice_dict():
    d = to_dict(neighborhood_lattice(Graph.path(4)))
    assert d["universe"] == 4 and [] in d["elements"] and [0, 1, 2, 3] in d["elements"]
    assert len(d["covers"]) >= 5


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"type": "graph", "n": -1, "edges": []},
        {"type": "graph", "n": 2, "edges": [[0, 0]]},
        {"type": "graph", "n": 2, "edges": [[0, 2]]},
        {"type": "graph", "n": 2, "edges": [[0]]},
        {"type": "graph", "n": 2},
        {"type": "poset", "n": 2, "lt": [[0, 1], [1, 0]]},
        {"type": "hypergraph", "n": 2},
    ],
)
def test_from_dict_rejects(data):
    with pytest.raises(ValueError):
        from_dict(data)


def test_load_family_and_file(tmp_path):
    assert load("family:g2:2") == Graph.path(4)
    assert load("family:q1:3:dual") == named_poset("Q1", 3, dualized=True)
    path = tmp_path / "g.json"
    path.write_text(dumps(named_graph("G3", 3)))
    assert load(str(path)) == named_graph("G3", 3)


def test_load_errors(tmp_path):
    with pytest.raises(ValueError):
        load(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load(str(bad))
    with pytest.raises(ValueError):
        load("family:nope:3")


def test_dot_output():
    assert "0 -- 1;" in to_dot(Graph.path(2))
    hasse = to_dot(named_poset("Q1", 2))
    assert "rankdir=BT" in hasse and "->" in hasse
    lat = to_dot(neighborhood_lattice(Graph.complete(2)))
    assert 'label="{}"' in lat and 'label="{0,1}"' in lat
    with pytest.raises(TypeError):
        to_dot(json)
