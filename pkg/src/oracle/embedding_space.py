"""Every planar embedding of a small graph, linked by single flips.

Embeddings are keyed by their counterclockwise neighbour orders, each cycle
rotated to start at its smallest neighbour, so the key does not depend on
edge numbering. Mirror images are distinct embeddings.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Literal, Optional, Sequence, Tuple

from src.embedding.graph import EmbeddedGraph
from src.embedding.rotation_io import from_neighbor_orders
from src.embedding.types import ArticulationFlip, Corner, FlipDescriptor, VertexId
from src.flipsearch.uflips import FaceTable, sigmas_for
from src.oracle.static import EdgeListGraph, is_genus_zero, rotation_systems
from src.utils.config import DEFAULT_SETTINGS
from src.utils.errors import EmbeddingError, OracleError, TooLarge

logger = logging.getLogger(__name__)

EmbeddingKey = Tuple[Tuple[VertexId, ...], ...]
FlipKind = Literal["articulation", "SR", "P"]


def _canonical_cycle(order: Sequence[VertexId]) -> Tuple[VertexId, ...]:
    if not order:
        return ()
    i = order.index(min(order))
    return tuple(order[i:]) + tuple(order[:i])


def embedding_key(g: EmbeddedGraph) -> EmbeddingKey:
    return tuple(_canonical_cycle([g.head(d) for d in g.darts_at(v)]) for v in range(g.n))


@dataclass(frozen=True)
class FlipEdge:
    """One flip from an embedding, labelled by type and cleanliness."""

    target: EmbeddingKey
    kind: FlipKind
    clean: bool
    descriptor: FlipDescriptor
    # vertices strictly inside the flipped part
    inside: FrozenSet[VertexId]
    pair: Tuple[VertexId, ...]
    subkind: Optional[str] = None

    def is_critical(self, u: VertexId, v: VertexId) -> bool:
        return (u in self.inside) != (v in self.inside)


def _contiguous_segments(darts: List[int], labels: Dict[int, tuple]) -> Iterator[List[int]]:
    """Proper cyclic intervals of a rotation that contain whole classes only."""
    deg = len(darts)
    for start in range(deg):
        for length in range(1, deg):
            seg = [darts[(start + k) % deg] for k in range(length)]
            inside = {labels[d] for d in seg}
            rest = [darts[(start + k) % deg] for k in range(length, deg)]
            if any(labels[d] in inside for d in rest):
                continue
            yield seg


def _articulation_flips(g: EmbeddedGraph) -> Iterator[Tuple[EmbeddedGraph, FlipEdge]]:
    for a in range(g.n):
        darts = g.darts_at(a)
        if len(darts) < 2:
            continue
        labels, _ = g.dart_classes((a,))
        if len(set(labels[d] for d in darts)) < 2:
            continue
        for seg in _contiguous_segments(darts, labels):
            seg_set = set(seg)
            for target in darts:
                if target in seg_set:
                    continue
                for reflect in (False, True):
                    flip = ArticulationFlip(Corner(a, seg[0]), Corner(a, seg[-1]), Corner(a, target), reflect)
                    h = g.copy()
                    try:
                        plan = h.plan_articulation(flip)
                        h.articulation_flip(flip)
                    except EmbeddingError:
                        continue
                    yield h, FlipEdge(
                        target=embedding_key(h),
                        kind="articulation",
                        clean=True,
                        descriptor=flip,
                        inside=plan.vertices - {a},
                        pair=(a,),
                        subkind="reflect" if reflect else "slide",
                    )


def _separation_flips(g: EmbeddedGraph) -> Iterator[Tuple[EmbeddedGraph, FlipEdge]]:
    table = FaceTable(g)
    for s, t in itertools.combinations(range(g.n), 2):
        faces = table.faces_with(s, t)
        adjacent = g.find_edge(s, t) is not None
        for f1, f2 in itertools.permutations(faces, 2):
            for sigma in sigmas_for(g, s, t, f1, f2):
                h = g.copy()
                try:
                    plan = h.plan_separation(sigma)
                    h.separation_flip(sigma)
                except EmbeddingError:
                    continue
                # two classes, one of them the edge st: not a separation pair
                if adjacent and plan.classes_inside + plan.classes_outside == 2:
                    continue
                kind: FlipKind = "P" if min(plan.classes_inside, plan.classes_outside) >= 2 else "SR"
                yield h, FlipEdge(
                    target=embedding_key(h),
                    kind=kind,
                    clean=plan.clean,
                    descriptor=sigma,
                    inside=plan.vertices - {s, t},
                    pair=(s, t),
                )


def enumerate_flips(g: EmbeddedGraph) -> List[FlipEdge]:
    """All articulation and separation flips of g, one per (result, type, cleanliness)."""
    here = embedding_key(g)
    seen = set()
    result: List[FlipEdge] = []
    for _, edge in itertools.chain(_articulation_flips(g), _separation_flips(g)):
        if edge.target == here:
            continue
        key = (edge.target, edge.kind, edge.clean, edge.subkind)
        if key in seen:
            continue
        seen.add(key)
        result.append(edge)
    return result


@dataclass
class EmbeddingSpace:
    """The flip graph Emb(G) of a small planar graph."""

    n: int
    edges: List[Tuple[VertexId, VertexId]]
    nodes: List[EmbeddingKey]
    graphs: Dict[EmbeddingKey, EmbeddedGraph]
    _flips: Dict[EmbeddingKey, List[FlipEdge]] = field(default_factory=dict)
    _admitting: Dict[Tuple[VertexId, VertexId], FrozenSet[EmbeddingKey]] = field(default_factory=dict)
    # distance maps, keyed by (tau, target set)
    _distances: Dict[tuple, Dict[EmbeddingKey, float]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, key: EmbeddingKey) -> bool:
        return key in self.graphs

    def graph(self, key: EmbeddingKey) -> EmbeddedGraph:
        return self.graphs[key].copy()

    def flips(self, key: EmbeddingKey) -> List[FlipEdge]:
        if key not in self._flips:
            edges = enumerate_flips(self.graphs[key])
            for edge in edges:
                if edge.target not in self.graphs:
                    raise OracleError(f"flip leads outside the embedding space: {edge.descriptor}")
            self._flips[key] = edges
        return self._flips[key]

    def build_flips(self) -> int:
        return sum(len(self.flips(key)) for key in self.nodes)

    def admitting(self, x: VertexId, y: VertexId) -> FrozenSet[EmbeddingKey]:
        """Emb(G; x, y): embeddings where x and y share a face."""
        pair = (min(x, y), max(x, y))
        if pair not in self._admitting:
            self._admitting[pair] = frozenset(k for k in self.nodes if self.graphs[k].common_face(x, y) is not None)
        return self._admitting[pair]

    def admitting_all(self, pairs) -> FrozenSet[EmbeddingKey]:
        result = frozenset(self.nodes)
        for x, y in pairs:
            result &= self.admitting(x, y)
        return result


def enumerate_embeddings(n: int, edges: Sequence[Tuple[VertexId, VertexId]], max_edges: Optional[int] = None) -> EmbeddingSpace:
    """All genus-0 rotation systems of (n, edges), mirror images counted separately."""
    graph = EdgeListGraph(n, list(edges))
    bound = DEFAULT_SETTINGS.oracle_max_edges if max_edges is None else max_edges
    if len(graph.edges) > bound:
        raise TooLarge(f"{len(graph.edges)} edges exceeds the enumeration bound of {bound}")
    graphs: Dict[EmbeddingKey, EmbeddedGraph] = {}
    for rotation in rotation_systems(graph.n, graph.edges):
        if not is_genus_zero(graph.n, graph.edges, rotation):
            continue
        g = from_neighbor_orders(graph.n, graph.edges, rotation)
        graphs.setdefault(embedding_key(g), g)
    nodes = sorted(graphs)
    logger.debug("%d embeddings of a graph with %d edges", len(nodes), len(graph.edges))
    return EmbeddingSpace(n=graph.n, edges=list(graph.edges), nodes=nodes, graphs=graphs)
