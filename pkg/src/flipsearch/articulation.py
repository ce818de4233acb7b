"""Articulation-point side of the multi-flip search.

Between u and v the block-cut tree gives a sequence u = a_0, a_1, ..., a_k = v
of cut vertices; blocks B_1..B_k lie between consecutive entries. Everything
here is computed from the rotation at a single articulation point: the darts
of one class of G - a form a contiguous run once the classes nested inside it
are included.
"""
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from src.embedding.graph import EmbeddedGraph
from src.embedding.types import ArticulationFlip, Corner, DartId, FaceId, VertexId
from src.flipsearch.context import FlipContext
from src.utils.errors import EmbeddingError, NoSuchFace

logger = logging.getLogger(__name__)


def _component_graph(g: EmbeddedGraph, v: VertexId) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.component_vertices(v))
    G.add_edges_from(g.endpoints(e) for e in g.component_edges(v))
    return G


def block_cut_path(g: EmbeddedGraph, u: VertexId, v: VertexId) -> List[VertexId]:
    """[u, a_1, ..., a_{k-1}, v]: the cut vertices met on the block-cut tree path from u to v."""
    G = _component_graph(g, u)
    blocks = [frozenset(b) for b in nx.biconnected_components(G)]
    cuts = set(nx.articulation_points(G))
    tree = nx.Graph()
    for i, block in enumerate(blocks):
        tree.add_node(("B", i))
        for a in block & cuts:
            tree.add_edge(("B", i), ("C", a))

    def node(w: VertexId):
        if w in cuts:
            return ("C", w)
        return next(("B", i) for i, b in enumerate(blocks) if w in b)

    path = nx.shortest_path(tree, node(u), node(v))
    inner = [a for kind, a in path if kind == "C" and a not in (u, v)]
    return [u] + inner + [v]


def _segment_around(g: EmbeddedGraph, a: VertexId, labels: Dict[DartId, tuple], inside: tuple, anchor: DartId) -> List[DartId]:
    """Shortest run of darts at a holding every `inside` dart but not `anchor`."""
    start = anchor
    while labels[start] != inside:
        start = g.rot_next(start)
    end = anchor
    while labels[end] != inside:
        end = g.rot_prev(end)
    segment = [start]
    while segment[-1] != end:
        segment.append(g.rot_next(segment[-1]))
    return segment


def _class_label(g: EmbeddedGraph, a: VertexId, w: VertexId) -> Tuple[Dict[DartId, tuple], tuple]:
    labels, comp = g.dart_classes((a,))
    return labels, ("c", comp[w])


def side_segment(g: EmbeddedGraph, a: VertexId, w_in: VertexId, w_out: VertexId) -> List[DartId]:
    """Darts at a covering the class of w_in in G - a, on the side facing w_out's class."""
    labels, inside = _class_label(g, a, w_in)
    _, outside = _class_label(g, a, w_out)
    anchor = next(d for d in g.darts_at(a) if labels[d] == outside)
    return _segment_around(g, a, labels, inside, anchor)


def separates(g: EmbeddedGraph, a: VertexId, u: VertexId, v: VertexId) -> bool:
    if a in (u, v):
        return False
    _, comp = g.dart_classes((a,))
    return comp[u] != comp[v]


def find_bounding_face(ctx: FlipContext, u: VertexId, a: VertexId, v: VertexId) -> Tuple[FaceId, Corner, Corner]:
    """The face wrapping u's side of articulation point a as seen from v's side.

    Returns the face and its two corners at a on either side of u's segment.
    """
    g = ctx.graph
    if not separates(g, a, u, v):
        raise NoSuchFace(f"{a} is not an articulation point between {u} and {v}")
    seg = side_segment(g, a, u, v)
    c_left = Corner(a, seg[0])
    c_right = Corner(a, g.rot_next(seg[-1]))
    return g.face_of_corner(c_left), c_left, c_right


def _toward_v_corners(g: EmbeddedGraph, a: VertexId, v: VertexId) -> List[Corner]:
    """Corners at a that touch the class of v in G - a."""
    labels, inside = _class_label(g, a, v)
    return [c for c in g.corners_at(a) if labels[c.dart] == inside or labels[g.rot_prev(c.dart)] == inside]


def sees_next_block(g: EmbeddedGraph, u: VertexId, a: VertexId, v: VertexId) -> bool:
    """u shares a face with a that also holds an edge of the block after a toward v.

    For a == v this is plain co-faciality of u and v.
    """
    if a == v:
        return g.common_face(u, v) is not None
    if a == u:
        return True
    return any(u in g.face_vertices(g.face_of_corner(c)) for c in _toward_v_corners(g, a, v))


def find_next_flip_block(
    ctx: FlipContext,
    u: VertexId,
    u_: VertexId,
    v_: VertexId,
    v: VertexId,
    seq: Optional[Sequence[VertexId]] = None,
) -> VertexId:
    """The last a_j from v_ onward that u already sees together with B_{j+1}, or v."""
    g = ctx.graph
    seq = list(seq) if seq is not None else block_cut_path(g, u, v)
    lo = seq.index(v_)
    for a in reversed(seq[lo:]):
        if sees_next_block(g, u, a, v):
            logger.debug("next flip block for (%d,%d) after %d: %d", u, v, u_, a)
            return a
    return v_


def _flip_segment(ctx: FlipContext, a: VertexId, seg: List[DartId], target: Corner, u: VertexId, v: VertexId) -> bool:
    flip = ArticulationFlip(Corner(a, seg[0]), Corner(a, seg[-1]), target)
    try:
        ctx.articulation_flip(flip, u, v)
    except EmbeddingError as e:
        logger.warning("articulation flip at %d rejected: %s", a, e)
        return False
    return True


def _move_next_block_to_u(ctx: FlipContext, u: VertexId, v_: VertexId, v: VertexId) -> bool:
    """At v_, slide the class of v into a wedge whose face holds u."""
    g = ctx.graph
    labels, inside = _class_label(g, v_, v)
    for c in g.corners_at(v_):
        if labels[c.dart] == inside or labels[g.rot_prev(c.dart)] == inside:
            continue
        if u in g.face_vertices(g.face_of_corner(c)):
            seg = _segment_around(g, v_, labels, inside, c.dart)
            return _flip_segment(ctx, v_, seg, c, u, v)
    return False


def _move_u_side(ctx: FlipContext, u: VertexId, u_: VertexId, v_: VertexId, v: VertexId, need_next_block: bool) -> bool:
    """At u_, slide u's class into a wedge whose face holds v_ (and the block after it if asked)."""
    g = ctx.graph
    try:
        _, _, c_right = find_bounding_face(ctx, u, u_, v)
    except NoSuchFace:
        return False
    seg = side_segment(g, u_, u, v)
    in_seg = set(seg)
    if need_next_block:
        wanted = {g.face_of_corner(c) for c in _toward_v_corners(g, v_, v)} if v_ != v else None
    else:
        wanted = set(g.faces_at(v_))
    for c in g.corners_at(u_):
        if c.dart in in_seg or c == c_right:
            continue
        f = g.face_of_corner(c)
        ok = v in g.face_vertices(f) if wanted is None else f in wanted
        if ok:
            return _flip_segment(ctx, u_, seg, c, u, v)
    return False


def do_articulation_flips(ctx: FlipContext, u: VertexId, u_: VertexId, v_: VertexId, v: VertexId) -> int:
    """Make u see v_ and the block after it using at most one slide at u_ and one at v_.

    Returns the number of articulation flips performed.
    """
    g = ctx.graph
    if sees_next_block(g, u, v_, v):
        return 0
    done = 0
    if v_ != v and u in {w for f in g.faces_at(v_) for w in g.face_vertices(f)}:
        done += _move_next_block_to_u(ctx, u, v_, v)
    elif u_ != u:
        if _move_u_side(ctx, u, u_, v_, v, need_next_block=True):
            done += 1
        elif v_ != v and _move_u_side(ctx, u, u_, v_, v, need_next_block=False):
            done += 1
            if not sees_next_block(g, u, v_, v):
                done += _move_next_block_to_u(ctx, u, v_, v)
    if not sees_next_block(g, u, v_, v):
        logger.warning("articulation flips left %d unable to see past %d toward %d", u, v_, v)
    else:
        logger.debug("%d articulation flip(s) between %d and %d", done, u_, v_)
    return done
