"""SPQR trees of biconnected graphs by repeated splitting at separation pairs.

The graph is split at any separation pair whose classes can be divided into
two groups of at least two edges each, adding a virtual edge to both halves,
until no split applies. Adjacent bonds and adjacent polygons are then merged
back, which yields the unique (strict) tree.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.decomposition.bc import Edge, normalize_edges
from src.embedding.types import VertexId
from src.utils.errors import DecompositionError, TooSmall

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkeletonEdge:
    a: VertexId
    b: VertexId
    # index into the block's edge list for real edges, virtual-edge id otherwise
    ident: int
    virtual: bool = False

    def ends(self) -> FrozenSet[VertexId]:
        return frozenset((self.a, self.b))


@dataclass
class SPQRNode:
    kind: str
    edges: Tuple[SkeletonEdge, ...]

    @property
    def vertices(self) -> FrozenSet[VertexId]:
        return frozenset(w for e in self.edges for w in (e.a, e.b))

    @property
    def real_edges(self) -> List[SkeletonEdge]:
        return [e for e in self.edges if not e.virtual]

    @property
    def virtual_edges(self) -> List[SkeletonEdge]:
        return [e for e in self.edges if e.virtual]


@dataclass
class SPQRTree:
    block: List[Edge]
    nodes: List[SPQRNode]
    tree: nx.Graph

    def nodes_with(self, w: VertexId) -> List[int]:
        return [i for i, node in enumerate(self.nodes) if w in node.vertices]

    def path(self, i: int, j: int) -> List[int]:
        return nx.shortest_path(self.tree, i, j)

    def shared_pair(self, i: int, j: int) -> Tuple[VertexId, VertexId]:
        """Separation pair of the virtual edge joining adjacent nodes i and j."""
        k = self.tree.edges[i, j]["virtual"]
        e = next(e for e in self.nodes[i].virtual_edges if e.ident == k)
        return e.a, e.b

    def kinds(self) -> Dict[str, int]:
        counts = {"S": 0, "P": 0, "R": 0}
        for node in self.nodes:
            counts[node.kind] += 1
        return counts

    def canonical(self) -> Tuple:
        """Shape of the tree independent of virtual-edge numbering."""
        return tuple(sorted((n.kind, tuple(sorted(e.ident for e in n.real_edges)), len(n.virtual_edges)) for n in self.nodes))


def _separation_classes(edges: Sequence[SkeletonEdge], a: VertexId, b: VertexId) -> List[List[SkeletonEdge]]:
    parent: Dict[VertexId, VertexId] = {}

    def find(x: VertexId) -> VertexId:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pair = {a, b}
    for e in edges:
        if e.a not in pair and e.b not in pair:
            parent[find(e.a)] = find(e.b)
    groups: Dict[object, List[SkeletonEdge]] = {}
    for e in edges:
        if e.ends() == pair:
            groups[("edge", e.ident, e.virtual)] = [e]
            continue
        inner = e.a if e.a not in pair else e.b
        groups.setdefault(("comp", find(inner)), []).append(e)
    return list(groups.values())


def _find_split(edges: Sequence[SkeletonEdge]) -> Optional[Tuple[List[SkeletonEdge], List[SkeletonEdge], VertexId, VertexId]]:
    vertices = sorted({w for e in edges for w in (e.a, e.b)})
    total = len(edges)
    for a, b in itertools.combinations(vertices, 2):
        classes = _separation_classes(edges, a, b)
        if len(classes) < 2:
            continue
        side: List[SkeletonEdge] = []
        for cls in sorted(classes, key=len, reverse=True):
            if len(cls) >= 2 and total - len(cls) >= 2:
                side = cls
                break
        else:
            for cls in classes:
                side = side + cls
                if len(side) >= 2:
                    break
            if total - len(side) < 2:
                continue
        chosen = {id(e) for e in side}
        rest = [e for e in edges if id(e) not in chosen]
        return side, rest, a, b
    return None


def _is_cycle(edges: Sequence[SkeletonEdge]) -> bool:
    degree: Dict[VertexId, int] = {}
    for e in edges:
        degree[e.a] = degree.get(e.a, 0) + 1
        degree[e.b] = degree.get(e.b, 0) + 1
    if any(d != 2 for d in degree.values()):
        return False
    G = nx.MultiGraph()
    G.add_edges_from((e.a, e.b) for e in edges)
    return nx.is_connected(G)


def _kind(edges: Sequence[SkeletonEdge]) -> str:
    if len({w for e in edges for w in (e.a, e.b)}) == 2:
        return "P"
    if _is_cycle(edges):
        return "S"
    return "R"


def _is_biconnected(edges: Sequence[Edge]) -> bool:
    G = nx.Graph(edges)
    return G.number_of_nodes() >= 2 and nx.is_biconnected(G)


def spqr_tree(block: Iterable[Edge]) -> SPQRTree:
    """SPQR tree of a biconnected simple graph with at least three edges."""
    block = normalize_edges(block)
    if len(block) < 3:
        raise TooSmall(f"SPQR tree needs at least 3 edges, got {len(block)}")
    if not _is_biconnected(block):
        raise DecompositionError("SPQR tree needs a biconnected graph")

    next_virtual = itertools.count()
    pending = [[SkeletonEdge(a, b, i) for i, (a, b) in enumerate(block)]]
    parts: List[List[SkeletonEdge]] = []
    while pending:
        edges = pending.pop()
        split = _find_split(edges)
        if split is None:
            parts.append(edges)
            continue
        side, rest, a, b = split
        k = next(next_virtual)
        pending.append(side + [SkeletonEdge(a, b, k, virtual=True)])
        pending.append(rest + [SkeletonEdge(a, b, k, virtual=True)])

    kinds = [_kind(p) for p in parts]
    merged = True
    while merged:
        merged = False
        owner: Dict[int, List[int]] = {}
        for i, p in enumerate(parts):
            for e in p:
                if e.virtual:
                    owner.setdefault(e.ident, []).append(i)
        for k, (i, j) in sorted(owner.items()):
            if kinds[i] == kinds[j] and kinds[i] in ("S", "P"):
                joined = [e for e in parts[i] + parts[j] if not (e.virtual and e.ident == k)]
                parts = [p for idx, p in enumerate(parts) if idx not in (i, j)] + [joined]
                kinds = [kd for idx, kd in enumerate(kinds) if idx not in (i, j)] + [kinds[i]]
                merged = True
                break

    order = sorted(range(len(parts)), key=lambda i: (min((e.ident for e in parts[i] if not e.virtual), default=len(block)), kinds[i]))
    nodes = [SPQRNode(kinds[i], tuple(sorted(parts[i], key=lambda e: (e.virtual, e.ident)))) for i in order]
    tree = nx.Graph()
    tree.add_nodes_from(range(len(nodes)))
    owner = {}
    for i, node in enumerate(nodes):
        for e in node.virtual_edges:
            owner.setdefault(e.ident, []).append(i)
    for k, (i, j) in owner.items():
        tree.add_edge(i, j, virtual=k)
    logger.debug("SPQR tree over %d edges: %s", len(block), "".join(n.kind for n in nodes))
    return SPQRTree(block=block, nodes=nodes, tree=tree)


def skeleton_faces(node: SPQRNode) -> List[List[VertexId]]:
    """Faces of the (unique up to mirroring) planar embedding of an R skeleton."""
    G = nx.Graph()
    G.add_edges_from((e.a, e.b) for e in node.edges)
    planar, embedding = nx.check_planarity(G)
    if not planar:
        raise DecompositionError("R skeleton is not planar")
    faces: List[List[VertexId]] = []
    seen: Set[Tuple[VertexId, VertexId]] = set()
    for a, b in embedding.edges():
        if (a, b) in seen:
            continue
        faces.append(embedding.traverse_face(a, b, mark_half_edges=seen))
    return faces


def face_has_edge(face: Sequence[VertexId], a: VertexId, b: VertexId) -> bool:
    k = len(face)
    return any({face[i], face[(i + 1) % k]} == {a, b} for i in range(k))
