import itertools

import networkx as nx
import pytest
from hypothesis import given, settings as hsettings

from src.embedding.rotation_io import from_neighbor_orders
from src.oracle.static import (
    EdgeListGraph,
    count_faces,
    find_embedding_static,
    is_planar_by_enumeration,
    is_planar_static,
    rotation_systems,
)
from src.utils.errors import OracleError

from tests.strategies import edge_lists

K5 = list(itertools.combinations(range(5), 2))
K3_3 = [(a, b) for a in range(3) for b in range(3, 6)]


def test_kuratowski_graphs_are_nonplanar():
    assert not is_planar_static(EdgeListGraph(5, K5))
    assert not is_planar_static(EdgeListGraph(6, K3_3))
    assert not is_planar_by_enumeration(EdgeListGraph(6, K3_3))


def test_removing_any_edge_makes_them_planar():
    for e in K5:
        assert is_planar_static(EdgeListGraph(5, [f for f in K5 if f != e]))
    assert is_planar_static(EdgeListGraph(6, K3_3[1:]))


def test_embedding_of_k4_is_genus_zero():
    edges = list(itertools.combinations(range(4), 2))
    orders = find_embedding_static(EdgeListGraph(4, edges))
    assert count_faces(orders) == 4
    g = from_neighbor_orders(4, edges, orders)
    assert g.validate().ok
    assert find_embedding_static(EdgeListGraph(5, K5)) is None


def test_rotation_systems_of_k4():
    edges = list(itertools.combinations(range(4), 2))
    systems = list(rotation_systems(4, edges))
    # two cyclic orders of three neighbours per vertex
    assert len(systems) == 16
    assert sum(count_faces(r) == 4 for r in systems) == 2


def test_malformed_edge_lists():
    with pytest.raises(OracleError):
        EdgeListGraph(3, [(0, 0)])
    with pytest.raises(OracleError):
        EdgeListGraph(3, [(0, 1), (1, 0)])
    with pytest.raises(OracleError):
        EdgeListGraph(3, [(0, 3)])


def test_empty_and_edgeless_graphs_are_planar():
    assert is_planar_static(EdgeListGraph(0))
    assert is_planar_static(EdgeListGraph(4))


@hsettings(max_examples=60, deadline=None)
@given(edge_lists(max_n=6, max_edges=8))
def test_enumeration_agrees_with_left_right_test(graph):
    n, edges = graph
    planar = is_planar_static(EdgeListGraph(n, edges), cross_check_limit=8)
    assert planar == nx.check_planarity(EdgeListGraph(n, edges).to_networkx())[0]
