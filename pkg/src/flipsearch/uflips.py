"""Exact u-flip evaluation by enumeration over face pairs and corners.

A u-flip is a separation flip at {s,t} whose corners lie on faces f_u, f_v
with u on f_u, and which splits the graph into H_u containing u and H_v
containing v (neither u nor v in {s,t}). Its size is edges plus vertices of H_u.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from src.embedding.graph import EmbeddedGraph
from src.embedding.types import Corner, FaceId, SeparationFlip, VertexId
from src.utils.errors import EmbeddingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UFlip:
    size: int
    sigma: SeparationFlip
    f_u: FaceId
    f_v: FaceId

    @property
    def pair(self) -> Tuple[VertexId, VertexId]:
        return self.sigma.pair


class FaceTable:
    """Face vertex sets of one embedding version."""

    def __init__(self, g: EmbeddedGraph):
        self.g = g
        self.version = g.version
        self.vertices: Dict[FaceId, Set[VertexId]] = {f: g.face_vertices(f) for f in g.face_ids()}

    def faces_with(self, *ws: VertexId) -> List[FaceId]:
        return [f for f, vs in self.vertices.items() if all(w in vs for w in ws)]


def _table(g: EmbeddedGraph, table: Optional[FaceTable]) -> FaceTable:
    if table is None or table.version != g.version:
        return FaceTable(g)
    return table


def evaluate_uflip(g: EmbeddedGraph, sigma: SeparationFlip, u: VertexId, v: VertexId) -> Optional[UFlip]:
    """The u-flip bounded by sigma, or None if sigma does not bound one."""
    try:
        plan = g.plan_separation(sigma)
    except EmbeddingError:
        return None
    if u in (plan.s, plan.t) or v in (plan.s, plan.t):
        return None
    f_u = g.face_of_corner(sigma.sigma[0])
    f_v = g.face_of_corner(sigma.sigma[3])
    if u not in g.face_vertices(f_u):
        return None
    u_inside, v_inside = u in plan.vertices, v in plan.vertices
    if u_inside == v_inside:
        return None
    if u_inside:
        size = plan.size
    else:
        n_edges = len(g.component_edges(plan.s)) - len(plan.edges)
        n_vertices = len(g.component_vertices(plan.s)) - len(plan.vertices)
        size = n_edges + n_vertices
    return UFlip(size, sigma, f_u, f_v)


def sigmas_for(g: EmbeddedGraph, s: VertexId, t: VertexId, f_u: FaceId, f_v: FaceId) -> Iterator[SeparationFlip]:
    for cxu, cxv, cyu, cyv in itertools.product(
        g.corners_on_face(s, f_u),
        g.corners_on_face(s, f_v),
        g.corners_on_face(t, f_u),
        g.corners_on_face(t, f_v),
    ):
        yield SeparationFlip((cxu, cyu, cyv, cxv))


def uflips_over(
    g: EmbeddedGraph,
    u: VertexId,
    v: VertexId,
    f_u: FaceId,
    f_v: FaceId,
    table: Optional[FaceTable] = None,
    pairs: Optional[Iterable[Tuple[VertexId, VertexId]]] = None,
) -> Iterator[UFlip]:
    """All u-flips whose corners lie on f_u and f_v."""
    if f_u == f_v:
        return
    table = _table(g, table)
    if pairs is None:
        common = sorted((table.vertices[f_u] & table.vertices[f_v]) - {u, v})
        pairs = itertools.combinations(common, 2)
    for s, t in pairs:
        for sigma in sigmas_for(g, s, t, f_u, f_v):
            flip = evaluate_uflip(g, sigma, u, v)
            if flip is not None:
                yield flip


def is_locally_maximal(g: EmbeddedGraph, sigma: SeparationFlip, u: VertexId, v: VertexId) -> bool:
    """True iff sigma bounds a u-flip-component that is locally maximal.

    No larger u-flip may be bounded by the same two faces, and no larger
    u-flip may share the separation pair and f_u with any other second face.
    """
    base = evaluate_uflip(g, sigma, u, v)
    if base is None:
        return False
    table = FaceTable(g)
    for other in uflips_over(g, u, v, base.f_u, base.f_v, table):
        if other.size > base.size:
            return False
    s, t = base.pair
    for f in table.faces_with(s, t):
        if f in (base.f_u, base.f_v):
            continue
        for other in uflips_over(g, u, v, base.f_u, f, table, pairs=[(s, t)]):
            if other.size > base.size:
                return False
    return True


def all_uflips(g: EmbeddedGraph, u: VertexId, v: VertexId) -> Iterator[UFlip]:
    table = FaceTable(g)
    for f_u in table.faces_with(u):
        for f_v in table.vertices:
            if f_v == f_u:
                continue
            if len((table.vertices[f_u] & table.vertices[f_v]) - {u, v}) < 2:
                continue
            yield from uflips_over(g, u, v, f_u, f_v, table)


def max_uflip(g: EmbeddedGraph, u: VertexId, v: VertexId) -> Optional[UFlip]:
    """A maximal u-flip by exhaustive enumeration (first found among equals)."""
    best: Optional[UFlip] = None
    for flip in all_uflips(g, u, v):
        if best is None or flip.size > best.size:
            best = flip
    return best
