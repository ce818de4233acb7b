import itertools
import logging
from typing import Dict, List, Optional, Tuple

from src.dynamic.connectivity import ConnectivityForest, Edge, norm
from src.dynamic.planar import PlanarDynamicGraph
from src.embedding.types import DartId, VertexId
from src.utils.config import Settings
from src.utils.errors import DuplicateEdge, DynamicGraphError, SelfLoop, UnknownEdge

logger = logging.getLogger(__name__)


class GeneralDynamicGraph:
    """Fully-dynamic graph answering planarity per component and globally.

    Edges that would break planarity wait in a per-component pile. A component
    is planar exactly when its pile is empty. New edges of a component with a
    nonempty pile go straight onto the pile; after a deletion the affected
    piles are re-attempted oldest first until the first rejection.
    """

    def __init__(self, n: int, settings: Optional[Settings] = None):
        self.planar = PlanarDynamicGraph(n, settings)
        self.conn = ConnectivityForest(n)
        # component label -> deferred edge -> arrival number
        self.piles: Dict[int, Dict[Edge, int]] = {}
        self._arrival = itertools.count()

    @property
    def n(self) -> int:
        return self.planar.n

    def _check_pair(self, u: VertexId, v: VertexId) -> None:
        for w in (u, v):
            if not (0 <= w < self.n):
                raise DynamicGraphError(f"vertex {w} out of range 0..{self.n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")

    def _defer(self, label: int, e: Edge) -> None:
        self.piles.setdefault(label, {})[e] = next(self._arrival)

    def _merge_piles(self, kept: int, absorbed: int) -> None:
        moved = self.piles.pop(absorbed, None)
        if moved:
            self.piles.setdefault(kept, {}).update(moved)

    def _split_pile(self, old: int) -> None:
        pile = self.piles.pop(old, None)
        if not pile:
            return
        for e, arrival in pile.items():
            self.piles.setdefault(self.conn.find(e[0]), {})[e] = arrival

    def deferred(self, w: Optional[VertexId] = None) -> List[Edge]:
        """Deferred edges (of w's component, or all) in arrival order."""
        if w is None:
            merged = {e: a for pile in self.piles.values() for e, a in pile.items()}
        else:
            merged = self.piles.get(self.conn.find(w), {})
        return sorted(merged, key=merged.get)

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return self.conn.has_edge(u, v)

    def insert(self, u: VertexId, v: VertexId) -> bool:
        """Add (u,v). Returns True if it was embedded, False if it went onto a pile.

        The connectivity forest only learns about the edge once the embedding
        attempt has returned, so a failed search leaves the structure unchanged.
        """
        self._check_pair(u, v)
        if self.conn.has_edge(u, v):
            raise DuplicateEdge(f"edge ({u},{v}) already present")
        e = norm(u, v)
        blocked = self.conn.find(u) in self.piles or self.conn.find(v) in self.piles
        embedded = not blocked and self.planar.insert(u, v)
        merged = self.conn.insert(u, v)
        if merged:
            self._merge_piles(*merged)
        if embedded:
            return True
        self._defer(self.conn.find(u), e)
        if blocked:
            logger.debug("(%d,%d) deferred: component already nonplanar", u, v)
        else:
            logger.info("(%d,%d) deferred as planarity certificate", u, v)
        return False

    def delete(self, u: VertexId, v: VertexId) -> None:
        self._check_pair(u, v)
        if not self.conn.has_edge(u, v):
            raise UnknownEdge(f"edge ({u},{v}) does not exist")
        e = norm(u, v)
        label = self.conn.find(u)
        pile = self.piles.get(label, {})
        if e in pile:
            del pile[e]
            if not pile:
                del self.piles[label]
        else:
            self.planar.delete(u, v)
        split = self.conn.delete(u, v)
        if split:
            self._split_pile(split[0])
        for w in dict.fromkeys((self.conn.find(u), self.conn.find(v))):
            self._drain(w)

    def _drain(self, label: int) -> None:
        pile = self.piles.get(label)
        if not pile:
            return
        for e in sorted(pile, key=pile.get):
            if not self.planar.insert(*e):
                logger.debug("drain of component %d halted at %s", label, e)
                return
            del pile[e]
        del self.piles[label]
        logger.info("component %d is planar again", label)

    def is_planar(self) -> bool:
        return not self.piles

    def component_planar(self, w: VertexId) -> bool:
        if not (0 <= w < self.n):
            raise DynamicGraphError(f"vertex {w} out of range 0..{self.n - 1}")
        return self.conn.find(w) not in self.piles

    def num_edges(self) -> int:
        return self.planar.graph.num_edges + sum(len(p) for p in self.piles.values())

    def edges(self) -> List[Edge]:
        """Every current edge, embedded or deferred."""
        return sorted(norm(*e) for e in self.planar.edge_list()) + self.deferred()

    def query_compatible(self, u: VertexId, v: VertexId) -> bool:
        """Whether G + (u,v) restricted to the affected components is planar."""
        self._check_pair(u, v)
        if not (self.component_planar(u) and self.component_planar(v)):
            return False
        return self.planar.query_compatible(u, v)

    def embedding_neighbors(self, u: VertexId, v: VertexId) -> Optional[Tuple[DartId, DartId, DartId, DartId]]:
        """Rotation neighbours of the embedded edge (u,v); None if it is absent or deferred."""
        self._check_pair(u, v)
        e = self.planar.graph.find_edge(u, v)
        if e is None:
            return None
        return self.planar.embedding_neighbors(e)
