import itertools

import networkx as nx
import pytest
from hypothesis import given, settings as hsettings

from src.decomposition.dot import tree_cotree_dot
from src.embedding.graph import EmbeddedGraph
from src.treecotree.index import TreeCotreeIndex
from src.utils.errors import DifferentComponents, NotOnCycle, SameNode, TreeEdge

from tests.strategies import connected_planar_edge_lists


def _index(embedding, name):
    g = embedding(name)
    return g, TreeCotreeIndex(g)


@pytest.mark.parametrize("name", ["TRI", "C4", "K4", "CUBE", "BOWTIE", "CHAIN3", "K2_4"])
def test_tree_and_cotree_sizes(embedding, name):
    g, idx = _index(embedding, name)
    assert len(idx.tree_edges()) == g.n - 1
    assert len(idx.cotree_edges()) == g.num_faces - 1
    assert idx.check_duality().ok


def test_triangle_pairs_are_linkable(embedding):
    g, idx = _index(embedding, "TRI")
    for u, v in itertools.permutations(range(3), 2):
        c_u, c_v = idx.linkable(u, v)
        assert g.face_of_corner(c_u) == g.face_of_corner(c_v)


def test_k2_4_opposite_paths_not_linkable(embedding):
    _, idx = _index(embedding, "K2_4")
    assert idx.linkable(2, 4) is None
    assert idx.linkable(2, 3) is not None


def test_cube_antipodal_not_linkable(embedding):
    _, idx = _index(embedding, "CUBE")
    assert idx.linkable(0, 7) is None


def test_linkable_preconditions():
    g = EmbeddedGraph(3)
    g.insert_edge_at(g.corners_at(0)[0], g.corners_at(1)[0])
    idx = TreeCotreeIndex(g)
    with pytest.raises(SameNode):
        idx.linkable(0, 0)
    with pytest.raises(DifferentComponents):
        idx.linkable(0, 2)


def test_path_end_edge_on_a_path(embedding):
    g, idx = _index(embedding, "PATH3")
    assert g.endpoints(idx.path_end_edge("primal", 0, 2, "first")) in ((0, 1), (1, 0))
    assert g.endpoints(idx.path_end_edge("primal", 0, 2, "last")) in ((1, 2), (2, 1))
    with pytest.raises(SameNode):
        idx.path_end_edge("primal", 1, 1)


def test_meet_degenerate_and_star():
    g = EmbeddedGraph(4)
    for leaf in (1, 2, 3):
        g.insert_edge_at(g.corners_at(0)[0], g.corners_at(leaf)[0])
    idx = TreeCotreeIndex(g)
    assert idx.meet("primal", 1, 1, 2) == 1
    assert idx.meet("primal", 1, 2, 3) == 0


def test_meet_matches_path_intersection_on_a_caterpillar():
    spine = [(0, 1), (1, 2), (2, 3)]
    legs = [(0, 4), (1, 5), (2, 6), (3, 7)]
    g = EmbeddedGraph(8)
    for a, b in spine + legs:
        g.insert_edge_at(g.corners_at(a)[0], g.corners_at(b)[0])
    idx = TreeCotreeIndex(g)
    T = nx.Graph(spine + legs)
    for x, y, z in itertools.combinations(range(8), 3):
        common = set(nx.shortest_path(T, x, y)) & set(nx.shortest_path(T, y, z)) & set(nx.shortest_path(T, x, z))
        assert common == {idx.meet("primal", x, y, z)}


def test_fundamental_cycle_and_projection(embedding):
    g, idx = _index(embedding, "K4")
    e = idx.cotree_edges()[0]
    cycle = idx.fundamental_cycle(e)
    assert len(cycle.vertices) == 3
    assert e in cycle.edge_set
    for w in cycle.vertices:
        assert idx.projection(cycle, w) == w
        a, b = idx.cycle_edges_at(cycle, w)
        assert {a, b} <= cycle.edge_set
    off = next(w for w in range(4) if w not in cycle.vertices)
    assert idx.projection(cycle, off) in cycle.vertices
    with pytest.raises(NotOnCycle):
        idx.cycle_edges_at(cycle, off)
    with pytest.raises(TreeEdge):
        idx.fundamental_cycle(idx.tree_edges()[0])


def test_same_side_splits_faces_of_a_triangle_in_k4(embedding):
    g, idx = _index(embedding, "K4")
    e = idx.cotree_edges()[0]
    cycle = idx.fundamental_cycle(e)
    fa, fb = g.edge_faces(e)
    assert not idx.same_side(cycle, fa, fb)
    assert idx.same_side(cycle, fa, fa)
    sides = [idx.side_of(cycle, f) for f in g.face_ids()]
    # a triangle of K4 separates the plane into one face and the other three
    assert sorted([sides.count(True), sides.count(False)]) == [1, 3]


def _faces_around(g, w):
    return {g.face_of_corner(c) for c in g.corners_at(w)}


def _first_incident(g, nodes, mark, tree):
    for w in nodes:
        if (mark in _faces_around(g, w)) if tree == "primal" else (mark in g.face_vertices(w)):
            return w
    return None


def _triangle_with_tails():
    # triangle 0,1,2 with pendant edges 0-3 and 2-4
    g = EmbeddedGraph(5)
    g.insert_edge_at(g.corners_at(0)[0], g.corners_at(1)[0])
    g.insert_edge_at(g.corners_at(1)[0], g.corners_at(2)[0])
    g.insert_edge_at(*g.common_face(0, 2))
    g.insert_edge_at(g.corners_at(0)[0], g.corners_at(3)[0])
    g.insert_edge_at(g.common_face(2, 3)[0], g.corners_at(4)[0])
    return g


def test_search_without_marks_returns_a_path_end():
    g = _triangle_with_tails()
    idx = TreeCotreeIndex(g)
    assert idx.mark_and_search("primal", 3, 4).node == 3
    assert idx.mark_and_search("primal", 3, 4, goal="last").node == 4
    assert idx.mark_and_search("primal", 2, 2).node == 2


def test_search_respects_the_side_of_the_path():
    g = _triangle_with_tails()
    idx = TreeCotreeIndex(g)
    inner = next(f for f in g.face_ids() if g.face_vertices(f) == {0, 1, 2})
    outer = next(f for f in g.face_ids() if f != inner)
    hit = idx.mark_and_search("primal", 3, 4, marks=[inner])
    assert hit.node == 0
    # the triangle's inside touches each interior path vertex on one side only
    assert (hit.left is None) != (hit.right is None)
    assert idx.mark_and_search("primal", 3, 4, marks=[inner], side="both") is None
    assert idx.mark_and_search("primal", 3, 4, marks=[outer], side="both").node == 3
    assert idx.mark_and_search("primal", 3, 4, marks=[inner, outer]).node == 0


def test_search_misses_a_face_away_from_the_path(embedding):
    g, idx = _index(embedding, "CUBE")
    x, y = g.endpoints(idx.tree_edges()[0])
    far = [f for f in g.face_ids() if not {x, y} & g.face_vertices(f)]
    assert far
    for f in far:
        assert idx.mark_and_search("primal", x, y, marks=[f]) is None
        assert idx.mark_and_search("primal", x, y, marks=[f], goal="last") is None


def test_search_takes_at_most_three_marks(embedding):
    _, idx = _index(embedding, "K4")
    with pytest.raises(ValueError):
        idx.mark_and_search("primal", 0, 1, marks=[0, 1, 2, 3])


@pytest.mark.parametrize("name", ["K4", "CUBE", "K2_4", "CHAIN3"])
def test_search_matches_a_scan_of_the_tree_path(embedding, name):
    g, idx = _index(embedding, name)
    primal = [w for w in range(g.n) if g.degree(w) > 0]
    for tree, nodes, marks in (("primal", primal, list(g.face_ids())), ("dual", list(g.face_ids()), primal)):
        for a, b in itertools.product(nodes, repeat=2):
            path = idx.tree_path(tree, a, b)[0] if a != b else [a]
            for m in marks:
                want_first = _first_incident(g, path, m, tree)
                want_last = _first_incident(g, path[::-1], m, tree)
                first = idx.mark_and_search(tree, a, b, marks=[m])
                last = idx.mark_and_search(tree, a, b, marks=[m], goal="last")
                assert (first.node if first else None) == want_first
                assert (last.node if last else None) == want_last


def test_dump_and_dot_list_every_edge(embedding):
    g, idx = _index(embedding, "CUBE")
    dump = idx.dump_edges().splitlines()
    assert sum(line.startswith("T ") for line in dump) == 7
    assert sum(line.startswith("T* ") for line in dump) == 5
    dot = tree_cotree_dot(idx)
    assert dot.startswith("graph tree_cotree {")
    assert dot.count("style=dashed") == 5


@hsettings(max_examples=30, deadline=None)
@given(connected_planar_edge_lists(max_n=7, max_edges=11))
def test_duality_survives_updates(graph):
    n, edges = graph
    g = EmbeddedGraph(n)
    idx = TreeCotreeIndex(g)
    for u, v in edges:
        if g.same_component(u, v):
            corners = g.common_face(u, v)
            if corners is None:
                continue
            g.insert_edge_at(*corners)
        else:
            g.insert_edge_at(g.corners_at(u)[0], g.corners_at(v)[0])
        assert idx.check_duality().ok
    for u, v in itertools.combinations(range(n), 2):
        if not g.same_component(u, v):
            continue
        shared = any(v in g.face_vertices(f) for f in _faces_around(g, u))
        found = idx.linkable(u, v)
        assert (found is not None) == shared
        if found is not None:
            c_u, c_v = found
            assert (c_u.vertex, c_v.vertex) == (u, v)
            assert g.face_of_corner(c_u) == g.face_of_corner(c_v)
    for e in g.edges()[::3]:
        g.delete_edge(e)
        assert idx.check_duality().ok
