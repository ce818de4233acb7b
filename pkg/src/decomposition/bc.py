"""Block-cut trees of connected graphs."""
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from src.embedding.types import VertexId
from src.utils.errors import DecompositionError, EmptyComponent

logger = logging.getLogger(__name__)

Edge = Tuple[VertexId, VertexId]
BCNode = Tuple[str, int]


def normalize_edges(edges: Iterable[Edge]) -> List[Edge]:
    return sorted({(min(a, b), max(a, b)) for a, b in edges})


@dataclass
class BCTree:
    """Strict block-cut tree: ("B", i) nodes for blocks, ("C", a) nodes for cut vertices."""

    blocks: List[Tuple[Edge, ...]]
    cuts: FrozenSet[VertexId]
    tree: nx.Graph

    def block_vertices(self, i: int) -> FrozenSet[VertexId]:
        return frozenset(w for e in self.blocks[i] for w in e)

    def node_of(self, w: VertexId) -> BCNode:
        """C node of a cut vertex, else the block holding w."""
        if w in self.cuts:
            return ("C", w)
        for i in range(len(self.blocks)):
            if w in self.block_vertices(i):
                return ("B", i)
        raise DecompositionError(f"vertex {w} is not in this component")

    def blocks_of(self, w: VertexId) -> List[int]:
        return [i for i in range(len(self.blocks)) if w in self.block_vertices(i)]

    def common_block(self, u: VertexId, v: VertexId) -> Optional[int]:
        shared = set(self.blocks_of(u)) & set(self.blocks_of(v))
        return min(shared) if shared else None

    def path(self, a: BCNode, b: BCNode) -> List[BCNode]:
        return nx.shortest_path(self.tree, a, b)


def bc_tree(edges: Iterable[Edge]) -> BCTree:
    """Block-cut tree of a connected graph given by its edge list."""
    edges = normalize_edges(edges)
    if not edges:
        raise EmptyComponent("block-cut tree of a component without edges")
    G = nx.Graph(edges)
    if not nx.is_connected(G):
        raise DecompositionError("block-cut tree needs a connected graph")
    blocks = sorted(tuple(sorted((min(a, b), max(a, b)) for a, b in comp)) for comp in nx.biconnected_component_edges(G))
    cuts = frozenset(nx.articulation_points(G))
    tree = nx.Graph()
    for i, block in enumerate(blocks):
        tree.add_node(("B", i))
        for a in sorted({w for e in block for w in e} & cuts):
            tree.add_edge(("B", i), ("C", a))
    logger.debug("block-cut tree: %d blocks, %d cut vertices", len(blocks), len(cuts))
    return BCTree(blocks=blocks, cuts=cuts, tree=tree)


def block_index(bc: BCTree) -> Dict[Edge, int]:
    return {e: i for i, block in enumerate(bc.blocks) for e in block}
