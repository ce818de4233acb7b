import logging
from typing import Dict, Iterable, Optional, Tuple

from src.embedding.graph import EmbeddedGraph
from src.embedding.types import DartId, EdgeId, VertexId
from src.flipsearch.context import FlipContext
from src.flipsearch.flip_log import FlipLog
from src.flipsearch.search import multi_flip_linkable
from src.treecotree.index import TreeCotreeIndex
from src.utils.config import DEFAULT_SETTINGS, Settings
from src.utils.errors import DuplicateEdge, DynamicGraphError, SelfLoop, UnknownEdge

logger = logging.getLogger(__name__)


class PlanarDynamicGraph:
    """Fully-dynamic planar graph that keeps a planar embedding under edge updates.

    Insertions flip the embedding until the endpoints share a face; deletions
    never flip. Rejected insertions keep any flips already made.
    """

    def __init__(self, n: int, settings: Optional[Settings] = None, keep_records: bool = True):
        self.settings = settings or DEFAULT_SETTINGS
        self.graph = EmbeddedGraph(n)
        self.index = TreeCotreeIndex(self.graph, self.settings.backend)
        self.log = FlipLog(keep_records=keep_records)
        self.ctx = FlipContext(self.graph, self.settings, self.log, self.index)
        self.counters: Dict[str, int] = {"inserts": 0, "rejects": 0, "deletes": 0, "queries": 0}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[VertexId, VertexId]], settings: Optional[Settings] = None) -> "PlanarDynamicGraph":
        """Insert edges one by one; raises DynamicGraphError if one of them is rejected."""
        pdg = cls(n, settings)
        for u, v in edges:
            if not pdg.insert(u, v):
                raise DynamicGraphError(f"edge ({u},{v}) makes the graph nonplanar")
        return pdg

    @classmethod
    def from_embedding(cls, graph: EmbeddedGraph, settings: Optional[Settings] = None) -> "PlanarDynamicGraph":
        """Adopt an existing genus-0 embedding as the starting state."""
        report = graph.validate()
        if not report.ok:
            raise DynamicGraphError("starting embedding is invalid: " + "; ".join(report.violations))
        pdg = cls(graph.n, settings)
        pdg.graph = graph
        pdg.index = TreeCotreeIndex(graph, pdg.settings.backend)
        pdg.ctx = FlipContext(graph, pdg.settings, pdg.log, pdg.index)
        return pdg

    @property
    def n(self) -> int:
        return self.graph.n

    def _check_vertex(self, w: VertexId) -> None:
        if not (0 <= w < self.graph.n):
            raise DynamicGraphError(f"vertex {w} out of range 0..{self.graph.n - 1}")

    def _check_pair(self, u: VertexId, v: VertexId) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return self.graph.find_edge(u, v) is not None

    def edge_list(self):
        return [self.graph.endpoints(e) for e in self.graph.edges()]

    def insert(self, u: VertexId, v: VertexId) -> bool:
        """Add (u,v) if the graph stays planar. Returns whether it was accepted."""
        self._check_pair(u, v)
        if self.has_edge(u, v):
            raise DuplicateEdge(f"edge ({u},{v}) already present")
        self.log.begin_op()
        g = self.graph
        if not g.same_component(u, v):
            g.insert_edge_at(g.corners_at(u)[0], g.corners_at(v)[0])
            self.counters["inserts"] += 1
            return True
        if not multi_flip_linkable(self.ctx, u, v):
            self.counters["rejects"] += 1
            logger.info("rejected (%d,%d) after %d flips", u, v, self.log.flips_this_op)
            return False
        c_u, c_v = self.index.linkable(u, v)
        g.insert_edge_at(c_u, c_v)
        self.counters["inserts"] += 1
        logger.info("inserted (%d,%d) after %d flips", u, v, self.log.flips_this_op)
        return True

    def delete(self, u: VertexId, v: VertexId) -> None:
        self._check_pair(u, v)
        e = self.graph.find_edge(u, v)
        if e is None:
            raise UnknownEdge(f"edge ({u},{v}) does not exist")
        self.log.begin_op()
        self.graph.delete_edge(e)
        self.counters["deletes"] += 1

    def query_compatible(self, u: VertexId, v: VertexId) -> bool:
        """Whether G + (u,v) is planar. May flip the embedding but never adds the edge."""
        self._check_pair(u, v)
        self.counters["queries"] += 1
        if self.has_edge(u, v) or not self.graph.same_component(u, v):
            return True
        self.log.begin_op()
        return multi_flip_linkable(self.ctx, u, v)

    def embedding_neighbors(self, e: EdgeId) -> Tuple[DartId, DartId, DartId, DartId]:
        """(rot_prev, rot_next) of dart 2e followed by (rot_prev, rot_next) of dart 2e+1."""
        g = self.graph
        if not g.has_edge(e):
            raise UnknownEdge(f"edge {e} does not exist")
        a, b = 2 * e, 2 * e + 1
        return g.rot_prev(a), g.rot_next(a), g.rot_prev(b), g.rot_next(b)

    def validate(self):
        return self.graph.validate()

    @property
    def flips_total(self) -> int:
        return self.log.total
