import itertools

import networkx as nx
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from src.dynamic.connectivity import ConnectivityForest
from src.dynamic.general import GeneralDynamicGraph
from src.dynamic.planar import PlanarDynamicGraph
from src.utils.errors import DuplicateEdge, FlipBudgetExceeded, UnknownEdge


def _k5(offset: int = 0):
    return [(a + offset, b + offset) for a, b in itertools.combinations(range(5), 2)]


def _k3_3():
    return [(a, b) for a in range(3) for b in range(3, 6)]


def test_k5_defers_its_last_edge_until_a_deletion():
    g = GeneralDynamicGraph(5)
    accepted = [g.insert(u, v) for u, v in _k5()]
    assert accepted.count(False) == 1
    assert not g.is_planar()
    assert len(g.deferred()) == 1
    assert g.num_edges() == 10
    deferred = g.deferred()[0]
    victim = next(e for e in _k5() if e != deferred)
    g.delete(*victim)
    assert g.is_planar()
    assert g.deferred() == []
    assert g.planar.graph.num_edges == 9
    assert g.planar.validate().ok


def test_k3_3_is_nonplanar_until_any_edge_goes():
    g = GeneralDynamicGraph(6)
    for u, v in _k3_3():
        g.insert(u, v)
    assert not g.is_planar()
    assert not g.component_planar(0)
    deferred = g.deferred(0)
    assert len(deferred) == 1
    g.delete(*deferred[0])
    assert g.is_planar()
    assert g.num_edges() == 8


def test_new_edges_of_a_nonplanar_component_go_straight_to_the_pile():
    g = GeneralDynamicGraph(6)
    for u, v in _k5():
        g.insert(u, v)
    before = g.planar.flips_total
    assert not g.insert(0, 5)
    assert g.deferred(0)[-1] == (0, 5)
    assert g.planar.flips_total == before
    assert g.embedding_neighbors(0, 5) is None


def test_planarity_is_tracked_per_component():
    g = GeneralDynamicGraph(10)
    for u, v in _k5():
        g.insert(u, v)
    for u, v in [(5, 6), (6, 7), (7, 8), (8, 5), (5, 7)]:
        assert g.insert(u, v)
    assert not g.is_planar()
    assert not g.component_planar(2)
    assert g.component_planar(6)
    assert g.component_planar(9)
    assert not g.query_compatible(0, 9)
    assert g.query_compatible(6, 8)
    assert g.embedding_neighbors(6, 8) is None
    assert g.embedding_neighbors(5, 6) is not None


def test_bridge_deletion_splits_the_pile():
    g = GeneralDynamicGraph(10)
    for u, v in _k5() + _k5(5):
        g.insert(u, v)
    assert not g.insert(4, 5)
    assert len(g.deferred(0)) == 3
    assert g.deferred(9)[-1] == (4, 5)
    g.delete(4, 5)
    assert len(g.deferred(0)) == 1
    assert len(g.deferred(9)) == 1
    g.delete(*g.deferred(9)[0])
    assert g.component_planar(9)
    assert not g.component_planar(0)


def test_general_preconditions():
    g = GeneralDynamicGraph(3)
    g.insert(0, 1)
    with pytest.raises(DuplicateEdge):
        g.insert(0, 1)
    with pytest.raises(UnknownEdge):
        g.delete(0, 2)


def test_connectivity_forest_split_and_merge():
    forest = ConnectivityForest(4)
    assert forest.insert(0, 1) is not None
    forest.insert(1, 2)
    assert forest.insert(0, 2) is None
    assert forest.delete(0, 2) is None
    assert forest.connected(0, 2)
    assert forest.delete(1, 2) is not None
    assert not forest.connected(0, 2)
    assert not forest.connected(0, 3)


@hsettings(max_examples=40, deadline=None)
@given(st.integers(min_value=5, max_value=7), st.data())
def test_agrees_with_static_planarity(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    ops = data.draw(st.lists(st.sampled_from(pairs), max_size=30))
    g = GeneralDynamicGraph(n)
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for u, v in ops:
        if G.has_edge(u, v):
            g.delete(u, v)
            G.remove_edge(u, v)
        else:
            g.insert(u, v)
            G.add_edge(u, v)
        assert g.is_planar() == nx.check_planarity(G)[0]
        assert sorted(g.edges()) == sorted(tuple(sorted(e)) for e in G.edges)
        for comp in nx.connected_components(G):
            w = min(comp)
            assert g.component_planar(w) == nx.check_planarity(G.subgraph(comp))[0]


def test_failed_search_leaves_the_edge_out(monkeypatch):
    g = GeneralDynamicGraph(4)
    g.insert(0, 1)

    def blow_up(self, u, v):
        raise FlipBudgetExceeded("flip budget exhausted")

    monkeypatch.setattr(PlanarDynamicGraph, "insert", blow_up)
    with pytest.raises(FlipBudgetExceeded):
        g.insert(1, 2)
    assert not g.has_edge(1, 2)
    assert g.edges() == [(0, 1)]
    assert g.conn.find(1) != g.conn.find(2)
    assert g.is_planar()
