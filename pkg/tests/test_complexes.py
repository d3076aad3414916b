from __future__ import annotations

import json

import networkx as nx
import pytest

from morsetilings import graphs as G
from morsetilings.complexes import (
    FaceCapExceeded,
    SimplicialComplex,
    aux_graph_xn,
    complex_difference,
    complex_equal,
    complex_from_dict,
    complex_from_facets,
    euler_characteristic_reduced,
    f_vector,
    independence_complex,
    is_downward_closed,
    mask_of,
    perfect_matching_complex,
)


def facet_labels(c: SimplicialComplex) -> list[list[str]]:
    return sorted(c.face_labels(f) for f in c.facets)


def test_ladder_2_is_two_points():
    c = perfect_matching_complex(G.grid_2xn(2))
    assert facet_labels(c) == [["a_1", "a_2"], ["b_1", "c_1"]]
    assert euler_characteristic_reduced(c) == 1


def test_path3_void():
    c = perfect_matching_complex(G.path(3))
    assert c.void and c.dimension == -2
    assert euler_characteristic_reduced(c) == "void"


def test_c6_excludes_bad_matching():
    c = perfect_matching_complex(G.cycle(6))
    assert c.face_from_labels(["a", "d"]) not in c
    assert c.face_from_labels(["a", "c"]) in c


def test_independence_small_graphs():
    p3 = independence_complex(G.path(3))
    assert facet_labels(p3) == [["1", "3"], ["2"]]
    k3 = independence_complex(G.cycle(3))
    assert facet_labels(k3) == [["1"], ["2"], ["3"]]
    empty = G.Graph({0: "x", 1: "y", 2: "z"}, (), ())
    assert facet_labels(independence_complex(empty)) == [["x", "y", "z"]]


def test_independence_matches_networkx_cliques_of_complement():
    g = G.grid_2xn(4)
    h = nx.complement(nx.Graph(list(g.edges)))
    c = independence_complex(g)
    maximal = {mask_of(cl) for cl in nx.find_cliques(h)}
    assert set(c.facets) == maximal


def test_aux_graph_shape():
    x2 = aux_graph_xn(2)
    line = nx.line_graph(nx.Graph(list(G.grid_2xn(2).edges)))
    assert x2.edge_count == line.number_of_edges() == 4
    x5 = aux_graph_xn(5)
    g5 = G.grid_2xn(5)
    extra = {frozenset(x5.edge_endpoint_labels(e)) for e in range(x5.edge_count)}
    line5 = nx.line_graph(nx.Graph([tuple(sorted(e)) for e in g5.edges]))
    assert x5.edge_count == line5.number_of_edges() + 6
    for i in range(1, 4):
        assert frozenset({f"b_{i}", f"c_{i + 1}"}) in extra
        assert frozenset({f"c_{i}", f"b_{i + 1}"}) in extra
    assert aux_graph_xn(1).vertex_count == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_ind_equals_pm(n):
    assert complex_equal(independence_complex(aux_graph_xn(n)), perfect_matching_complex(G.grid_2xn(n)))


def test_complex_comparison():
    c = perfect_matching_complex(G.grid_2xn(4))
    assert complex_equal(c, c)
    assert complex_difference(perfect_matching_complex(G.grid_2xn(2)), perfect_matching_complex(G.grid_2xn(3))) == "ground-size"
    a = complex_from_facets(["x", "y"], [[0]])
    b = complex_from_facets(["x", "y"], [[1]])
    assert complex_difference(a, b) == "faces"
    assert complex_difference(a, b, {"x": "y", "y": "x"}) is None
    assert complex_difference(a, b, {"x": "z", "y": "x"}) == "ground-labels"


def test_euler_and_f_vector():
    pts = complex_from_facets(["p", "q"], [[0], [1]])
    assert f_vector(pts) == [2] and euler_characteristic_reduced(pts) == 1
    tri = complex_from_facets(["1", "2", "3"], [[0, 1, 2]])
    assert euler_characteristic_reduced(tri) == 0
    assert euler_characteristic_reduced(perfect_matching_complex(G.grid_2xn(4))) == -1


def test_downward_closure_and_purity():
    c = perfect_matching_complex(G.even_tiling(3, 2))
    assert is_downward_closed(c)
    assert {bin(f).count("1") for f in c.facets} == {5}
    broken = SimplicialComplex(("x", "y"), frozenset({0b11, 0}))
    assert not is_downward_closed(broken)


def test_face_cap():
    with pytest.raises(FaceCapExceeded):
        perfect_matching_complex(G.grid_2xn(8), cap=100)
    with pytest.raises(FaceCapExceeded):
        independence_complex(aux_graph_xn(8), cap=100)


def test_serialization_round_trip():
    c = perfect_matching_complex(G.grid_2xn(4))
    data = json.loads(c.to_json(full=True))
    assert len(data["faces"]) == len(c.faces)
    assert complex_equal(complex_from_dict(data), c)
    assert c.to_json() == perfect_matching_complex(G.grid_2xn(4)).to_json()
