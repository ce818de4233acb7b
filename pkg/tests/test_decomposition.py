import networkx as nx
import pytest

from src.decomposition.bc import bc_tree, block_index
from src.decomposition.dot import bc_tree_dot, spqr_tree_dot
from src.decomposition.solid import block_solid_paths, critical_path, heavy_paths, presplit_decomposition
from src.decomposition.spqr import spqr_tree
from src.utils.errors import DecompositionError, EmptyComponent, NotSameBlock, TooSmall


def test_chain_block_cut_tree(graph_edges):
    _, edges = graph_edges("CHAIN3")
    bc = bc_tree(edges)
    assert bc.blocks == [
        ((0, 1), (0, 2), (1, 2)),
        ((2, 3), (2, 4), (3, 4)),
        ((4, 5), (4, 6), (5, 6)),
    ]
    assert bc.cuts == {2, 4}
    assert bc.node_of(0) == ("B", 0)
    assert bc.node_of(4) == ("C", 4)
    assert bc.common_block(0, 6) is None
    assert bc.common_block(2, 3) == 1
    assert bc.path(("B", 0), ("B", 2)) == [("B", 0), ("C", 2), ("B", 1), ("C", 4), ("B", 2)]
    assert block_index(bc)[(3, 4)] == 1


def test_block_cut_tree_preconditions():
    with pytest.raises(EmptyComponent):
        bc_tree([])
    with pytest.raises(DecompositionError):
        bc_tree([(0, 1), (2, 3)])


def test_bridges_are_their_own_blocks(graph_edges):
    _, edges = graph_edges("PATH3")
    bc = bc_tree(edges)
    assert len(bc.blocks) == 2
    assert bc.cuts == {1}


@pytest.mark.parametrize(
    "name, kinds",
    [
        ("K2_4", {"S": 4, "P": 1, "R": 0}),
        ("K4", {"S": 0, "P": 0, "R": 1}),
        ("C4", {"S": 1, "P": 0, "R": 0}),
        ("CUBE", {"S": 0, "P": 0, "R": 1}),
    ],
)
def test_spqr_node_kinds(graph_edges, name, kinds):
    _, edges = graph_edges(name)
    assert spqr_tree(edges).kinds() == kinds


def test_spqr_tree_of_k2_4_hangs_off_one_bond(graph_edges):
    _, edges = graph_edges("K2_4")
    spqr = spqr_tree(edges)
    bond = next(i for i, node in enumerate(spqr.nodes) if node.kind == "P")
    assert spqr.tree.degree(bond) == 4
    for j in spqr.tree.neighbors(bond):
        assert set(spqr.shared_pair(bond, j)) == {0, 1}
        assert len(spqr.nodes[j].real_edges) == 2


def test_spqr_preconditions():
    with pytest.raises(TooSmall):
        spqr_tree([(0, 1), (1, 2)])
    with pytest.raises(DecompositionError):
        spqr_tree([(0, 1), (0, 2), (0, 3)])


def test_spqr_tree_is_independent_of_edge_order(graph_edges):
    _, edges = graph_edges("K2_4")
    assert spqr_tree(edges).canonical() == spqr_tree(list(reversed(edges))).canonical()


def test_critical_path_levels(graph_edges):
    _, chain = graph_edges("CHAIN3")
    assert critical_path(chain, 0, 6) == [("B", 0), ("C", 2), ("B", 1), ("C", 4), ("B", 2)]
    with pytest.raises(NotSameBlock):
        critical_path(chain, 0, 6, level="spqr")
    _, k2_4 = graph_edges("K2_4")
    path = critical_path(k2_4, 2, 4)
    spqr = spqr_tree(k2_4)
    assert [spqr.nodes[i].kind for i in path] == ["S", "P", "S"]
    assert critical_path(k2_4, 2, 4, level="bc") == [("B", 0)]
    with pytest.raises(NotSameBlock):
        critical_path([(0, 1), (2, 3)], 0, 3)


def test_heavy_paths_follow_the_heaviest_child():
    tree = nx.Graph([(0, 1), (1, 2), (2, 3), (1, 4)])
    paths = heavy_paths(tree, [0], lambda node: 1, lambda node: "S")
    assert paths.paths == [[0], [1, 2, 3], [4]]
    assert paths.weights[1] == 4
    assert paths.split == [2]
    assert paths.path_of(3) == [1, 2, 3]


def test_block_solid_paths_skip_single_edges():
    assert block_solid_paths([(0, 1)], 0, 1) == (None, None)


def test_presplit_layout_of_a_chain(graph_edges):
    _, edges = graph_edges("CHAIN3")
    pre = presplit_decomposition(edges, 0, 6)
    layout = pre.critical_layout
    assert layout.anchors == [0, 2, 4, 6]
    assert layout.blocks == [0, 1, 2]
    assert layout.critical
    assert all(pre.blocks[b].critical for b in layout.blocks)
    assert (pre.blocks[1].x, pre.blocks[1].y) == (2, 4)


def test_presplit_with_a_pendant_triangle():
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]
    pre = presplit_decomposition(edges, 0, 1)
    covered = [node for path in pre.bc_paths.paths for node in path]
    assert sorted(covered) == sorted(pre.bc.tree.nodes)
    assert len(pre.layouts) == len(pre.bc_paths.paths)
    assert not any(layout.critical for layout in pre.layouts[1:])


def test_dot_dumps(graph_edges):
    _, chain = graph_edges("CHAIN3")
    dot = bc_tree_dot(bc_tree(chain), highlight=[("C", 2)])
    assert dot.startswith("graph bc {")
    assert dot.count(" -- ") == 4
    assert "style=bold" in dot
    _, k2_4 = graph_edges("K2_4")
    dot = spqr_tree_dot(spqr_tree(k2_4))
    assert dot.count(" -- ") == 4
    assert '"0,1"' in dot


def _atlas(min_edges, max_nodes, test):
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() > max_nodes:
            break
        if G.number_of_edges() >= min_edges and test(G):
            yield sorted((min(e), max(e)) for e in G.edges())


def _connected(G):
    return nx.is_connected(G)


def _biconnected(G):
    return G.number_of_nodes() >= 3 and nx.is_biconnected(G)


def test_block_cut_trees_of_small_graphs():
    for edges in _atlas(1, 6, _connected):
        bc = bc_tree(edges)
        owner = block_index(bc)
        assert sorted(owner) == edges
        assert sum(len(b) for b in bc.blocks) == len(edges)
        assert nx.is_tree(bc.tree)
        G = nx.Graph(edges)
        assert bc.cuts == set(nx.articulation_points(G))
        for i, block in enumerate(bc.blocks):
            B = nx.Graph(block)
            assert len(block) == 1 or nx.is_biconnected(B)
            assert {w for _, w in bc.tree.neighbors(("B", i))} == bc.block_vertices(i) & bc.cuts


def test_spqr_trees_of_small_biconnected_graphs():
    for edges in _atlas(3, 7, _biconnected):
        spqr = spqr_tree(edges)
        real = sorted(e.ident for node in spqr.nodes for e in node.real_edges)
        assert real == list(range(len(edges)))
        for node in spqr.nodes:
            for e in node.real_edges:
                assert spqr.block[e.ident] == (min(e.a, e.b), max(e.a, e.b))

        owners = {}
        for i, node in enumerate(spqr.nodes):
            for e in node.virtual_edges:
                owners.setdefault(e.ident, []).append((i, e.ends()))
        assert nx.is_tree(spqr.tree)
        assert spqr.tree.number_of_edges() == len(owners)
        for k, pair in owners.items():
            assert len(pair) == 2
            (i, ends_i), (j, ends_j) = pair
            assert ends_i == ends_j
            assert spqr.tree.edges[i, j]["virtual"] == k

        for i, j in spqr.tree.edges():
            assert not (spqr.nodes[i].kind == spqr.nodes[j].kind and spqr.nodes[i].kind in ("S", "P"))

        for node in spqr.nodes:
            assert len(node.edges) >= 3
            skeleton = nx.MultiGraph([(e.a, e.b) for e in node.edges])
            if node.kind == "P":
                assert len(node.vertices) == 2
            elif node.kind == "S":
                assert all(d == 2 for _, d in skeleton.degree())
                assert nx.is_connected(skeleton)
            else:
                simple = nx.Graph(skeleton)
                assert simple.number_of_edges() == len(node.edges)
                assert simple.number_of_nodes() >= 4
                assert nx.node_connectivity(simple) >= 3
