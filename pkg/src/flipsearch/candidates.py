import logging
from typing import List, NamedTuple, Optional

from src.embedding.types import EdgeId, FaceId, VertexId
from src.flipsearch.context import FlipContext
from src.treecotree.index import CycleHandle
from src.utils.errors import FlipSearchError, TreeCotreeError

logger = logging.getLogger(__name__)

MAX_CANDIDATES = 20


class CandidateTuple(NamedTuple):
    f_u: FaceId
    f_v: FaceId
    cycle: CycleHandle
    e_u: EdgeId
    e_v: EdgeId


def _left_right(ctx: FlipContext, e: EdgeId, w: VertexId):
    g = ctx.graph
    d = g.dart_from(e, w)
    return g.face_of(d), g.face_of(g.twin(d))


def _add(result: List[CandidateTuple], cand: CandidateTuple) -> None:
    if cand.f_u is None or cand.f_v is None:
        return
    if cand not in result:
        result.append(cand)


def _meet(ctx: FlipContext, a: Optional[FaceId], b: Optional[FaceId], c: Optional[FaceId]) -> Optional[FaceId]:
    if a is None or b is None or c is None:
        return None
    return ctx.index.meet("dual", a, b, c)


def _single_11(ctx, u, v, u_l, u_r, f_ul, f_ur, e_u, e_v, result) -> None:
    idx = ctx.index
    e = idx.path_end_edge("dual", f_ul, f_ur, "first")
    cycle = idx.fundamental_cycle(e)
    try:
        e_u1, e_u2 = idx.cycle_edges_at(cycle, u)
        e_v1, e_v2 = idx.cycle_edges_at(cycle, v)
    except TreeCotreeError:
        return
    for f in (u_l, u_r):
        same = [idx.face_of_edge_on_side(x, [cycle], f) for x in (e_u1, e_u2, e_v1, e_v2)]
        other = [idx.face_of_edge_opposite(x, cycle, f) for x in (e_u1, e_u2, e_v1, e_v2)]
        _add(result, CandidateTuple(
            _meet(ctx, same[0], same[1], same[2]),
            _meet(ctx, other[2], other[3], other[0]),
            cycle, e_u, e_v,
        ))


def _single_10(ctx, near, far, near_faces, f_near_star, f_far_star, e_near, result, near_is_u) -> None:
    """Separating cycle through one endpoint (`near`) only."""
    idx = ctx.index
    for f in near_faces:
        if f == f_near_star:
            continue
        e = idx.path_end_edge("dual", f_near_star, f, "first")
        cycle = idx.fundamental_cycle(e)
        try:
            e_n1, e_n2 = idx.cycle_edges_at(cycle, near)
            e_f1, e_f2 = idx.cycle_edges_at(cycle, idx.projection(cycle, far))
        except TreeCotreeError:
            continue
        for e_far in (e_f1, e_f2):
            for f_far in dict.fromkeys(ctx.graph.edge_faces(e_far)):
                f1 = idx.face_of_edge_on_side(e_n1, [cycle], f_far)
                f2 = idx.face_of_edge_on_side(e_n2, [cycle], f_far)
                near_face = _meet(ctx, f1, f2, f_far)
                if near_is_u:
                    _add(result, CandidateTuple(near_face, f_far_star, cycle, e_near, e_far))
                else:
                    _add(result, CandidateTuple(f_far_star, near_face, cycle, e_far, e_near))


def find_single_flip_candidates(ctx: FlipContext, u: VertexId, v: VertexId) -> List[CandidateTuple]:
    """Candidate (f_u', f_v', C, e_u', e_v') tuples for a single-flip insertion of (u,v)."""
    idx = ctx.index
    e_u = idx.path_end_edge("primal", u, v, "first")
    e_v = idx.path_end_edge("primal", u, v, "last")
    u_l, u_r = _left_right(ctx, e_u, u)
    v_l, v_r = _left_right(ctx, e_v, v)
    f_ul = idx.meet("dual", u_l, u_r, v_l)
    f_ur = idx.meet("dual", u_l, u_r, v_r)
    f_vl = idx.meet("dual", v_l, v_r, u_l)

    result: List[CandidateTuple] = []
    if f_ul != f_ur:
        _single_11(ctx, u, v, u_l, u_r, f_ul, f_ur, e_u, e_v, result)
    else:
        f_us, f_vs = f_ul, f_vl
        _single_10(ctx, u, v, dict.fromkeys((u_l, u_r)), f_us, f_vs, e_u, result, near_is_u=True)
        _single_10(ctx, v, u, dict.fromkeys((v_l, v_r)), f_vs, f_us, e_v, result, near_is_u=False)
        if f_us != f_vs:
            e = idx.path_end_edge("dual", f_us, f_vs, "first")
            cycle = idx.fundamental_cycle(e)
            e_u1, e_u2 = idx.cycle_edges_at(cycle, idx.projection(cycle, u))
            e_v1, e_v2 = idx.cycle_edges_at(cycle, idx.projection(cycle, v))
            for e_u_ in (e_u1, e_u2):
                for e_v_ in (e_v1, e_v2):
                    _add(result, CandidateTuple(f_us, f_vs, cycle, e_u_, e_v_))

    if len(result) > MAX_CANDIDATES:
        raise FlipSearchError(f"{len(result)} candidate tuples for ({u},{v})")
    logger.debug("%d candidate tuples for (%d,%d)", len(result), u, v)
    return result
