import itertools

import networkx as nx
import pytest

from src.analyzers.property_checker import ASSERTED, PROPERTIES, audit_flip_sequence, check_properties
from src.harness import fixtures
from src.oracle.embedding_space import embedding_key, enumerate_embeddings
from src.utils.errors import OracleError


@pytest.mark.parametrize("name, u, v", [("TRI", 0, 1), ("C4", 0, 2), ("K2_4", 2, 4), ("CHAIN3", 0, 6)])
def test_asserted_properties_hold_on_fixtures(name, u, v):
    n, edges = fixtures.build(name)
    report = check_properties(n, edges, u, v)
    assert report["ok"], report["failures"]
    assert report["failures"] == []
    assert set(report["properties"]) >= ASSERTED
    assert report["embeddings"] == len(enumerate_embeddings(n, edges))


def test_report_shape_for_an_existing_edge():
    n, edges = fixtures.build("TRI")
    report = check_properties(n, edges, 0, 1, measure_logn=False)
    props = report["properties"]
    assert props["critical_iff_insertable"]["status"] == "skipped"
    assert props["no_critical_for_edge"]["status"] == "pass"
    assert props["sandwich"]["status"] == "skipped"
    assert report["struts"]["critical"] == []
    assert report["graph"] == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]], "u": 0, "v": 1}


def test_nonplanar_graph_is_refused():
    n, edges = fixtures.build("K3_3")
    with pytest.raises(OracleError):
        check_properties(n, edges, 0, 1)


def test_audit_of_a_single_p_flip(embedding):
    n, edges = fixtures.build("K2_4")
    space = enumerate_embeddings(n, edges)
    h = embedding_key(embedding("K2_4"))
    audit = audit_flip_sequence(space, h, 2, 4)
    assert audit["accepted"]
    assert audit["flips"] == 1
    assert audit["steps"][0]["kind"] == "P"
    assert audit["decreasing"] + audit["neutral"] + audit["increasing"] == 1
    assert len(audit["potential"]) == 2
    assert audit["q"] == audit["r"] ** 2 + 2 * audit["r"] + 1
    assert audit["within_greedy_bound"]


def test_audit_when_already_linkable(embedding):
    n, edges = fixtures.build("C4")
    space = enumerate_embeddings(n, edges)
    audit = audit_flip_sequence(space, space.nodes[0], 0, 2)
    assert audit["accepted"]
    assert audit["flips"] == 0
    assert audit["potential"] == [0]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["TRI", "C4", "K4", "K2_4", "BOWTIE", "CHAIN3"])
def test_every_vertex_pair_of_small_fixtures(name):
    n, edges = fixtures.build(name)
    space = enumerate_embeddings(n, edges)
    for u, v in itertools.combinations(range(n), 2):
        report = check_properties(n, edges, u, v, space=space, measure_logn=False)
        assert report["ok"], (u, v, report["failures"])


def _atlas(max_edges):
    """Connected planar graphs from the networkx atlas with 1..max_edges edges."""
    for G in nx.graph_atlas_g():
        if not 1 <= G.number_of_edges() <= max_edges or not nx.is_connected(G):
            continue
        if not nx.check_planarity(G)[0]:
            continue
        yield G.number_of_nodes(), sorted((min(e), max(e)) for e in G.edges())


def test_only_distance_measurements_are_left_unasserted():
    assert set(PROPERTIES) - ASSERTED == {"good_embeddings_close", "sandwich", "clean_connected"}
    for name in ("struts_after_insert", "dirty_replaceable", "insert_consistency", "one_strut_per_flip", "struts_triconnect"):
        assert name in ASSERTED


def test_struts_survive_inserting_the_pair():
    edges = [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    report = check_properties(5, edges, 0, 3, measure_logn=False)
    assert report["properties"]["struts_after_insert"]["status"] == "pass"
    assert report["ok"], report["failures"]


def test_dirty_flip_next_to_a_pendant_edge_is_replaceable():
    # a 4-cycle with a pendant edge hanging off a vertex of a separation pair
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]
    report = check_properties(5, edges, 1, 3, measure_logn=False)
    assert report["properties"]["dirty_replaceable"]["status"] == "pass"
    assert report["ok"], report["failures"]


def test_existing_edge_reports_ok():
    edges = [(0, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (0, 3)]
    report = check_properties(5, edges, 0, 3, measure_logn=False)
    assert report["properties"]["no_critical_for_edge"]["status"] == "pass"
    assert report["ok"], report["failures"]


@pytest.mark.slow
def test_every_pair_of_every_small_connected_planar_graph():
    for n, edges in _atlas(7):
        space = enumerate_embeddings(n, edges)
        for u, v in itertools.combinations(range(n), 2):
            report = check_properties(n, edges, u, v, space=space, measure_logn=False)
            assert report["ok"], (n, edges, u, v, report["failures"])


@pytest.mark.slow
def test_greedy_search_stays_near_the_clean_distance():
    for n, edges in _atlas(8):
        G = nx.Graph(edges)
        space = enumerate_embeddings(n, edges)
        for u, v in itertools.combinations(range(n), 2):
            if G.has_edge(u, v):
                continue
            H = G.copy()
            H.add_edge(u, v)
            insertable = nx.check_planarity(H)[0]
            for h in space.nodes:
                audit = audit_flip_sequence(space, h, u, v)
                assert audit["accepted"] == insertable, (edges, u, v, h)
                assert audit["within_greedy_bound"], (edges, u, v, h, audit["flips"], audit["dist_clean_to_goal"])
