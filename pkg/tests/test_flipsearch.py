import networkx as nx
import pytest
from hypothesis import assume, given, settings as hsettings, strategies as st

from src.embedding.rotation_io import from_neighbor_orders
from src.flipsearch.articulation import (
    block_cut_path,
    do_articulation_flips,
    find_bounding_face,
    find_next_flip_block,
)
from src.flipsearch.candidates import MAX_CANDIDATES, find_single_flip_candidates
from src.flipsearch.context import FlipContext
from src.flipsearch.flip_log import FlipLog
from src.flipsearch.search import multi_flip_linkable
from src.flipsearch.separation import NO_FLIP, choose_best_flip, do_separation_flips, find_first_separation_flip
from src.flipsearch.uflips import all_uflips, is_locally_maximal, max_uflip
from src.oracle.static import EdgeListGraph, find_embedding_static
from src.utils.config import Settings
from src.utils.errors import NoSuchFace, SameNode

from tests.strategies import connected_planar_edge_lists


def _ctx(embedding, name, **overrides):
    return FlipContext(embedding(name), Settings(**overrides), FlipLog())


def test_block_cut_path_of_chain(embedding):
    assert block_cut_path(embedding("CHAIN3"), 0, 6) == [0, 2, 4, 6]
    assert block_cut_path(embedding("TRI"), 0, 1) == [0, 1]


def test_bounding_face_at_bowtie_center(embedding):
    ctx = _ctx(embedding, "BOWTIE")
    f, c_left, c_right = find_bounding_face(ctx, 0, 2, 3)
    assert {0, 2} <= ctx.graph.face_vertices(f)
    assert c_left.vertex == c_right.vertex == 2
    with pytest.raises(NoSuchFace):
        find_bounding_face(ctx, 1, 0, 3)


def test_next_flip_block_in_favorable_chain(embedding):
    ctx = _ctx(embedding, "CHAIN3")
    assert find_next_flip_block(ctx, 0, 0, 2, 6) == 6


def test_next_flip_block_stops_before_misplaced_triangle(embedding):
    ctx = _ctx(embedding, "CHAIN3_NESTED")
    assert find_next_flip_block(ctx, 0, 0, 2, 6) == 2


def test_next_flip_block_single_block(embedding):
    ctx = _ctx(embedding, "TRI")
    assert find_next_flip_block(ctx, 0, 0, 1, 1) == 1


def test_no_articulation_flips_when_already_cofacial(embedding):
    ctx = _ctx(embedding, "CHAIN3")
    assert do_articulation_flips(ctx, 0, 0, 2, 6) == 0
    assert ctx.log.total == 0


def test_nested_chain_links_with_articulation_flips_only(embedding):
    ctx = _ctx(embedding, "CHAIN3_NESTED", check_critical=True)
    ctx.log.begin_op()
    assert ctx.graph.common_face(0, 6) is None
    assert multi_flip_linkable(ctx, 0, 6)
    assert ctx.graph.common_face(0, 6) is not None
    assert ctx.graph.validate().ok
    assert ctx.log.totals["SR"] == ctx.log.totals["P"] == 0
    assert 1 <= ctx.log.totals["articulation"] <= 2


def test_k2_4_needs_one_p_flip(embedding):
    ctx = _ctx(embedding, "K2_4", check_critical=True)
    ctx.log.begin_op()
    candidates = find_single_flip_candidates(ctx, 2, 4)
    assert len(candidates) <= MAX_CANDIDATES
    assert do_separation_flips(ctx, 2, 4)
    assert ctx.log.totals == {"articulation": 0, "SR": 0, "P": 1}
    assert all(r.critical for r in ctx.log.records)
    assert ctx.graph.common_face(2, 4) is not None


def test_k2_4_maximal_uflip_is_locally_maximal(embedding):
    g = embedding("K2_4")
    best = max_uflip(g, 2, 4)
    assert best is not None
    assert is_locally_maximal(g, best.sigma, 2, 4)
    assert all(f.size <= best.size for f in all_uflips(g, 2, 4))
    smaller = [f for f in all_uflips(g, 2, 4) if f.size < best.size and (f.f_u, f.f_v) == (best.f_u, best.f_v)]
    for f in smaller:
        assert not is_locally_maximal(g, f.sigma, 2, 4)


def test_first_separation_flip_never_beats_exhaustive_search(embedding):
    ctx = _ctx(embedding, "K2_4")
    found = find_first_separation_flip(ctx, 2, 4)
    assert found.size <= max_uflip(ctx.graph, 2, 4).size


def test_choose_best_flip_same_face_is_empty(embedding):
    ctx = _ctx(embedding, "K2_4")
    f = ctx.graph.face_of_corner(ctx.graph.corners_at(2)[0])
    assert choose_best_flip(ctx, 2, 4, f, f) == NO_FLIP


def test_cube_antipodal_admits_no_flip(embedding):
    ctx = _ctx(embedding, "CUBE")
    ctx.log.begin_op()
    assert list(all_uflips(ctx.graph, 0, 7)) == []
    assert not multi_flip_linkable(ctx, 0, 7)
    assert ctx.log.total == 0


def test_linking_a_vertex_to_itself(embedding):
    ctx = _ctx(embedding, "TRI")
    with pytest.raises(SameNode):
        multi_flip_linkable(ctx, 1, 1)


@hsettings(max_examples=60, deadline=None)
@given(connected_planar_edge_lists(max_n=7, max_edges=11), st.data())
def test_linking_is_sound_and_critical(graph, data):
    n, edges = graph
    G = nx.Graph(edges)
    missing = [(a, b) for a in range(n) for b in range(a + 1, n) if not G.has_edge(a, b)]
    assume(missing)
    u, v = data.draw(st.sampled_from(missing))
    g = from_neighbor_orders(n, edges, find_embedding_static(EdgeListGraph(n, edges)))
    ctx = FlipContext(g, Settings(check_critical=True), FlipLog())
    ctx.log.begin_op()

    G.add_edge(u, v)
    linked = multi_flip_linkable(ctx, u, v)
    assert g.validate().ok
    if linked:
        assert g.common_face(u, v) is not None
    assert linked == nx.check_planarity(G)[0]
    assert not ctx.log.non_critical()


@hsettings(max_examples=30, deadline=None)
@given(connected_planar_edge_lists(max_n=7, max_edges=11), st.data())
def test_exhaustive_cross_check_gives_the_same_verdict(graph, data):
    n, edges = graph
    G = nx.Graph(edges)
    missing = [(a, b) for a in range(n) for b in range(a + 1, n) if not G.has_edge(a, b)]
    assume(missing)
    u, v = data.draw(st.sampled_from(missing))
    rotation = find_embedding_static(EdgeListGraph(n, edges))
    verdicts = []
    for limit in (0, 64):
        g = from_neighbor_orders(n, edges, rotation)
        ctx = FlipContext(g, Settings(exhaustive_edge_limit=limit), FlipLog())
        ctx.log.begin_op()
        verdicts.append(multi_flip_linkable(ctx, u, v))
    assert verdicts[0] == verdicts[1]
