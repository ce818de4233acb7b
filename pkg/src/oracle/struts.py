"""Struts: insertable non-edges whose flip distances make up the cost potentials.

critical-struts(G; u, v) come from the critical BC solid path and the
critical SPQR paths of its blocks; off-critical struts come from every other
solid path. A candidate strut is kept only if it is not an edge of G and
G plus that strut stays planar; off-critical struts that break planarity
together with the others are dropped. When (u,v) is already an edge, the
struts are those of G minus (u,v), without (u,v) itself.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.decomposition.bc import Edge, normalize_edges
from src.decomposition.solid import BCPathLayout, BlockPaths, SolidPathSet, presplit_decomposition
from src.decomposition.spqr import SPQRTree, face_has_edge, skeleton_faces
from src.embedding.types import VertexId
from src.utils.errors import OracleError

logger = logging.getLogger(__name__)


def _pair(x: VertexId, y: VertexId) -> Edge:
    return (min(x, y), max(x, y))


@dataclass(frozen=True)
class StrutSet:
    critical: FrozenSet[Edge]
    off_critical: FrozenSet[Edge]
    # candidates rejected because they were present or broke planarity
    dropped: Tuple[Edge, ...] = ()

    @property
    def solid(self) -> FrozenSet[Edge]:
        return self.critical | self.off_critical


@dataclass
class _StrutBuilder:
    graph: nx.Graph
    paths: SolidPathSet
    dropped: List[Edge] = field(default_factory=list)
    _planar: Dict[Edge, bool] = field(default_factory=dict)
    _faces: Dict[Tuple[int, int], List[List[VertexId]]] = field(default_factory=dict)

    def planar_with(self, x: VertexId, y: VertexId) -> bool:
        """Whether G + (x,y) is planar (trivially so when (x,y) is already an edge)."""
        e = _pair(x, y)
        if e not in self._planar:
            if self.graph.has_edge(*e):
                self._planar[e] = True
            else:
                h = self.graph.copy()
                h.add_edge(*e)
                self._planar[e] = nx.check_planarity(h)[0]
        return self._planar[e]

    def keep(self, x: Optional[VertexId], y: Optional[VertexId]) -> Set[Edge]:
        if x is None or y is None or x == y:
            return set()
        e = _pair(x, y)
        if self.graph.has_edge(*e) or not self.planar_with(*e):
            self.dropped.append(e)
            return set()
        return {e}

    def jointly_planar(self, critical: Set[Edge], off: Set[Edge]) -> Set[Edge]:
        """Off-critical struts that keep G plus the critical struts planar, taken in sorted order."""
        h = self.graph.copy()
        h.add_edges_from(critical)
        kept: Set[Edge] = set()
        for e in sorted(off):
            h.add_edge(*e)
            if nx.check_planarity(h)[0]:
                kept.add(e)
            else:
                h.remove_edge(*e)
                self.dropped.append(e)
        return kept

    # ---------------------------------------------------------------- SPQR level

    def _skeleton_faces(self, block: int, spqr: SPQRTree, i: int) -> List[List[VertexId]]:
        if (block, i) not in self._faces:
            self._faces[(block, i)] = skeleton_faces(spqr.nodes[i])
        return self._faces[(block, i)]

    def _sharing(self, block: int, spqr: SPQRTree, i: int, pair: Tuple[VertexId, VertexId]) -> Set[VertexId]:
        """Vertices of node i other than the pair that share a skeleton face with the pair's edge."""
        found: Set[VertexId] = set()
        for face in self._skeleton_faces(block, spqr, i):
            if face_has_edge(face, *pair):
                found.update(face)
        return found - set(pair)

    def _is_cross(self, block: int, spqr: SPQRTree, i: int, p: Tuple[VertexId, VertexId], q: Tuple[VertexId, VertexId]) -> bool:
        """An R node whose virtual edges p and q lie on no common skeleton face."""
        if spqr.nodes[i].kind != "R":
            return False
        return not any(
            face_has_edge(face, *p) and face_has_edge(face, *q) for face in self._skeleton_faces(block, spqr, i)
        )

    def path_struts(self, bp: BlockPaths, beta: Sequence[int], ends: Optional[Tuple[VertexId, VertexId]]) -> Set[Edge]:
        """Struts of one SPQR solid path; `ends` is (x, y) for the critical path."""
        spqr = bp.spqr
        rel = list(beta)
        while rel and spqr.nodes[rel[0]].kind == "P":
            rel.pop(0)
        while rel and spqr.nodes[rel[-1]].kind == "P":
            rel.pop()
        if len(rel) <= 1:
            if ends is None:
                return set()
            return self.keep(*ends)

        d = len(rel)
        pairs = [spqr.shared_pair(rel[j], rel[j + 1]) for j in range(d - 1)]
        breaks = [0]
        for j in range(1, d - 1):
            if self._is_cross(bp.block, spqr, rel[j], pairs[j - 1], pairs[j]):
                breaks.append(j)
        breaks.append(d - 1)

        x, y = ends if ends is not None else (None, None)
        struts: Set[Edge] = set()
        for l, h in zip(breaks, breaks[1:]):
            near = self._sharing(bp.block, spqr, rel[l], pairs[l])
            far = self._sharing(bp.block, spqr, rel[h], pairs[h - 1])
            u_g = min(near, key=lambda w: (w != x, w), default=None)
            v_g = min(far, key=lambda w: (w != y, w), default=None)
            struts |= self.keep(u_g, v_g)
        return struts

    def block_critical(self, bp: BlockPaths) -> Set[Edge]:
        if bp.spqr is None:
            return set()
        return self.path_struts(bp, bp.paths.critical, (bp.x, bp.y))

    def block_off_critical(self, bp: BlockPaths) -> Set[Edge]:
        if bp.spqr is None:
            return set()
        off: Set[Edge] = set()
        for beta in bp.paths.paths[1:]:
            off |= self.path_struts(bp, beta, None)
        return off

    # ---------------------------------------------------------------- BC level

    def bc_path_struts(self, layout: BCPathLayout) -> Tuple[Set[Edge], Set[Edge]]:
        if not layout.blocks:
            return set(), set()
        a, blocks = layout.anchors, layout.blocks
        k = len(blocks)
        critical: Set[Edge] = set()
        off: Set[Edge] = set()
        for i, b in enumerate(blocks):
            bp = self.paths.blocks[b]
            if not self.planar_with(a[i], a[i + 1]):
                critical |= self.block_critical(bp)
            off |= self.block_off_critical(bp)

        reach: List[Optional[int]] = []
        for l in range(k):
            ok = [h for h in range(l, k) if self.planar_with(a[l], a[h + 1])]
            reach.append(max(ok) if ok else None)
        for l, h in enumerate(reach):
            if h is None:
                continue
            if any(reach[m] is not None and reach[m] >= h for m in range(l)):
                continue
            critical |= self.keep(a[l], a[h + 1])
        return critical, off


def struts(edges: Sequence[Edge], u: VertexId, v: VertexId) -> StrutSet:
    """critical-struts(G; u, v) and off-critical-struts(G; u, v) of a planar graph."""
    if u == v:
        raise OracleError(f"struts need two distinct vertices, got {u} twice")
    edges = normalize_edges(edges)
    uv = _pair(u, v)
    if uv in edges:
        # an existing edge keeps the struts it had before insertion, minus itself
        rest = struts([e for e in edges if e != uv], u, v)
        return StrutSet(critical=frozenset(), off_critical=rest.solid - {uv}, dropped=rest.dropped)
    G = nx.Graph(edges)
    G.add_nodes_from((u, v))
    if not nx.has_path(G, u, v):
        # joining two components never breaks planarity
        return StrutSet(critical=frozenset({uv}), off_critical=frozenset())

    builder = _StrutBuilder(G, presplit_decomposition(edges, u, v))
    critical, off = builder.bc_path_struts(builder.paths.critical_layout)
    for layout in builder.paths.layouts[1:]:
        crit_a, off_a = builder.bc_path_struts(layout)
        off |= crit_a | off_a
    off = builder.jointly_planar(critical, off - critical)
    logger.debug("struts for (%d,%d): %d critical, %d off-critical", u, v, len(critical), len(off))
    return StrutSet(critical=frozenset(critical), off_critical=frozenset(off), dropped=tuple(sorted(set(builder.dropped))))
