"""Critical paths and heavy-path ("solid path") decompositions of BC and SPQR trees.

The critical path between the nodes housing u and v is always one solid path.
The rest of the tree is rooted where it hangs off that path and split into
heavy paths by subtree weight, ties going to the smaller node. C, P and S
nodes strictly inside a solid path are recorded as split.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Literal, Optional, Sequence, Tuple

import networkx as nx

from src.decomposition.bc import BCTree, Edge, bc_tree, normalize_edges
from src.decomposition.spqr import SPQRTree, spqr_tree
from src.embedding.types import VertexId
from src.utils.errors import DecompositionError, NotSameBlock

logger = logging.getLogger(__name__)


@dataclass
class SolidPaths:
    """Solid paths of one tree; `paths[0]` is the critical path."""

    paths: List[List[Hashable]]
    weights: Dict[Hashable, int]
    split: List[Hashable] = field(default_factory=list)

    @property
    def critical(self) -> List[Hashable]:
        return self.paths[0]

    def path_of(self, node: Hashable) -> List[Hashable]:
        return next(p for p in self.paths if node in p)


@dataclass
class BlockPaths:
    """Solid paths of one block's SPQR tree, laid out between the vertices x and y."""

    block: int
    x: VertexId
    y: VertexId
    spqr: Optional[SPQRTree]
    paths: Optional[SolidPaths]
    critical: bool


@dataclass
class BCPathLayout:
    """Blocks B_1..B_k of one BC solid path and the vertices a_0..a_k around them."""

    path: List[Tuple[str, int]]
    blocks: List[int]
    anchors: List[VertexId]
    critical: bool


@dataclass
class SolidPathSet:
    bc: BCTree
    bc_paths: SolidPaths
    layouts: List[BCPathLayout]
    blocks: Dict[int, BlockPaths]
    u: VertexId
    v: VertexId

    @property
    def critical_layout(self) -> BCPathLayout:
        return self.layouts[0]


def heavy_paths(
    tree: nx.Graph,
    spine: Sequence[Hashable],
    weight: Callable[[Hashable], int],
    kind: Callable[[Hashable], str],
) -> SolidPaths:
    """Split `tree` into the solid path `spine` and heavy paths hanging off it."""
    spine = list(spine)
    on_spine = set(spine)
    children: Dict[Hashable, List[Hashable]] = {}
    subtree: Dict[Hashable, int] = {}
    for top in spine:
        order, stack = [], [(top, None)]
        while stack:
            node, parent = stack.pop()
            order.append(node)
            kids = sorted(w for w in tree.neighbors(node) if w != parent and w not in on_spine)
            children[node] = kids
            stack.extend((k, node) for k in kids)
        for node in reversed(order):
            subtree[node] = weight(node) + sum(subtree[k] for k in children[node])

    paths = [spine]
    heads = [k for node in spine for k in children[node]]
    while heads:
        path = [heads.pop(0)]
        while children[path[-1]]:
            kids = children[path[-1]]
            # max keeps the first of equal weights, and kids are sorted
            heavy = max(kids, key=lambda k: subtree[k])
            heads.extend(k for k in kids if k != heavy)
            path.append(heavy)
        paths.append(path)
    split = [node for p in paths for node in p[1:-1] if kind(node) in ("C", "P", "S")]
    return SolidPaths(paths=paths, weights=subtree, split=split)


def _housing_pair(spqr: SPQRTree, x: VertexId, y: VertexId) -> Tuple[int, int]:
    """Closest pair of non-P nodes housing x and y, smallest ids first on ties."""
    best = None
    for i in spqr.nodes_with(x):
        if spqr.nodes[i].kind == "P":
            continue
        for j in spqr.nodes_with(y):
            if spqr.nodes[j].kind == "P":
                continue
            key = (nx.shortest_path_length(spqr.tree, i, j), i, j)
            if best is None or key < best:
                best = key
    if best is None:
        raise NotSameBlock(f"no SPQR nodes house both {x} and {y}")
    return best[1], best[2]


def spqr_critical_path(spqr: SPQRTree, x: VertexId, y: VertexId) -> List[int]:
    i, j = _housing_pair(spqr, x, y)
    return spqr.path(i, j)


def block_solid_paths(block_edges: Sequence[Edge], x: VertexId, y: VertexId) -> Tuple[Optional[SPQRTree], Optional[SolidPaths]]:
    """SPQR solid paths of one block around its x-y critical path (None for blocks under three edges)."""
    if len(block_edges) < 3:
        return None, None
    spqr = spqr_tree(block_edges)
    spine = spqr_critical_path(spqr, x, y)
    paths = heavy_paths(
        spqr.tree,
        spine,
        lambda i: 1 + len(spqr.nodes[i].real_edges),
        lambda i: spqr.nodes[i].kind,
    )
    return spqr, paths


def critical_path(
    edges: Iterable[Edge],
    u: VertexId,
    v: VertexId,
    level: Literal["auto", "bc", "spqr"] = "auto",
) -> List[Hashable]:
    """Tree path between the nodes housing u and v.

    "bc" walks the block-cut tree; "spqr" needs u and v in one block of at
    least three edges and walks its SPQR tree; "auto" picks SPQR when it can.
    """
    G = nx.Graph(normalize_edges(edges))
    if u not in G or v not in G or not nx.has_path(G, u, v):
        raise NotSameBlock(f"{u} and {v} are not in one component")
    bc = bc_tree(G.subgraph(nx.node_connected_component(G, u)).edges())
    shared = bc.common_block(u, v)
    has_spqr = shared is not None and len(bc.blocks[shared]) >= 3
    if level == "spqr" and not has_spqr:
        raise NotSameBlock(f"{u} and {v} do not share a block with an SPQR tree")
    if level == "spqr" or (level == "auto" and has_spqr):
        return spqr_critical_path(spqr_tree(bc.blocks[shared]), u, v)
    return bc.path(bc.node_of(u), bc.node_of(v))


def _layout(bc: BCTree, path: List[Tuple[str, int]], root: Tuple[str, int], ends: Optional[Tuple[VertexId, VertexId]]) -> BCPathLayout:
    """Anchor vertices of a BC solid path.

    The critical path runs from u to v. Any other path starts at the cut
    vertex it hangs from and ends at the smallest other vertex of its last
    block.
    """
    idx = [i for i, (kind, _) in enumerate(path) if kind == "B"]
    blocks = [path[i][1] for i in idx]
    if not blocks:
        return BCPathLayout(path=path, blocks=[], anchors=[], critical=ends is not None)
    inner = [a for kind, a in path[idx[0]:idx[-1]] if kind == "C"]
    if ends is not None:
        return BCPathLayout(path=path, blocks=blocks, anchors=[ends[0]] + inner + [ends[1]], critical=True)
    first = next(a for kind, a in nx.shortest_path(bc.tree, ("B", blocks[0]), root) if kind == "C")
    before = inner[-1] if inner else first
    last = min(w for w in bc.block_vertices(blocks[-1]) if w != before)
    return BCPathLayout(path=path, blocks=blocks, anchors=[first] + inner + [last], critical=False)


def presplit_decomposition(edges: Iterable[Edge], u: VertexId, v: VertexId) -> SolidPathSet:
    """Solid paths of the BC tree of u's component and of every block's SPQR tree.

    Every block is laid out between the anchors on either side of it along
    its BC solid path, so its SPQR critical path joins those two vertices.
    """
    G = nx.Graph(normalize_edges(edges))
    if u not in G or v not in G or not nx.has_path(G, u, v):
        raise DecompositionError(f"{u} and {v} are not in one component")
    bc = bc_tree(G.subgraph(nx.node_connected_component(G, u)).edges())
    crit = bc.path(bc.node_of(u), bc.node_of(v))
    bc_paths = heavy_paths(
        bc.tree,
        crit,
        lambda node: 1 + (len(bc.blocks[node[1]]) if node[0] == "B" else 0),
        lambda node: node[0],
    )

    layouts = [
        _layout(bc, path, crit[0], (u, v) if i == 0 else None)
        for i, path in enumerate(bc_paths.paths)
    ]
    blocks: Dict[int, BlockPaths] = {}
    for layout in layouts:
        for k, b in enumerate(layout.blocks):
            x, y = layout.anchors[k], layout.anchors[k + 1]
            spqr, paths = block_solid_paths(bc.blocks[b], x, y)
            blocks[b] = BlockPaths(block=b, x=x, y=y, spqr=spqr, paths=paths, critical=layout.critical)
    logger.debug("solid paths for (%d,%d): %d BC paths, %d blocks", u, v, len(bc_paths.paths), len(blocks))
    return SolidPathSet(bc=bc, bc_paths=bc_paths, layouts=layouts, blocks=blocks, u=u, v=v)
