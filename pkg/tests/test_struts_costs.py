import networkx as nx
import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st

from src.harness import fixtures
from src.oracle.costs import CostVector, cost, cost_vector, emb_star
from src.oracle.embedding_space import embedding_key, enumerate_embeddings
from src.oracle.struts import struts
from src.utils.errors import OracleError

from tests.strategies import connected_planar_edge_lists


def test_existing_edge_has_no_struts(graph_edges):
    _, edges = graph_edges("TRI")
    found = struts(edges, 0, 1)
    assert found.critical == frozenset()
    assert (0, 1) not in found.solid
    before = struts([e for e in edges if e != (0, 1)], 0, 1)
    assert found.solid == before.solid - {(0, 1)}


def test_inserting_the_pair_removes_only_itself_from_the_struts():
    edges = [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    before = struts(edges, 0, 3)
    after = struts(edges + [(0, 3)], 0, 3)
    assert (0, 3) in before.critical
    assert after.critical == frozenset()
    assert after.solid | {(0, 3)} == before.solid


def test_insertable_pair_is_its_own_strut(graph_edges):
    _, edges = graph_edges("C4")
    assert struts(edges, 2, 0).critical == {(0, 2)}
    _, edges = graph_edges("K2_4")
    assert (2, 4) in struts(edges, 2, 4).critical


def test_vertices_in_different_components():
    found = struts([(0, 1), (2, 3)], 1, 2)
    assert found.critical == {(1, 2)}
    assert found.off_critical == frozenset()


def test_struts_need_two_vertices(graph_edges):
    _, edges = graph_edges("TRI")
    with pytest.raises(OracleError):
        struts(edges, 1, 1)


def test_cube_diagonal_is_never_a_strut(graph_edges):
    _, edges = graph_edges("CUBE")
    found = struts(edges, 0, 7)
    assert (0, 7) not in found.solid
    G = nx.Graph(edges)
    for x, y in found.solid:
        assert not G.has_edge(x, y)


def test_cost_vector_chain():
    assert CostVector(3, 2, 1).chain_holds()
    assert not CostVector(1, 2, 0).chain_holds()
    assert CostVector(4, 2, 1)["sep"] == 2


def test_costs_vanish_on_good_embeddings():
    n, edges = fixtures.build("K2_4")
    space = enumerate_embeddings(n, edges)
    strut_set = struts(edges, 2, 4)
    good = emb_star(space, strut_set)
    assert good
    for h in good:
        assert cost(space, "clean", h, 2, 4, "solid", strut_set) == 0
        assert cost_vector(space, h, strut_set.critical) == CostVector(0, 0, 0)


def test_cost_of_a_cofacial_pair(embedding):
    n, edges = fixtures.build("C4")
    space = enumerate_embeddings(n, edges)
    h = embedding_key(embedding("C4"))
    assert cost(space, "P", h, 0, 2) == 0


@hsettings(max_examples=40, deadline=None)
@given(connected_planar_edge_lists(max_n=7, max_edges=11), st.data())
def test_every_strut_is_an_insertable_non_edge(graph, data):
    n, edges = graph
    u, v = data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)))
    assume(u != v)
    found = struts(edges, u, v)
    assert not (found.critical & found.off_critical)
    G = nx.Graph(edges)
    for x, y in found.solid:
        assert not G.has_edge(x, y)
        H = G.copy()
        H.add_edge(x, y)
        assert nx.check_planarity(H)[0]
