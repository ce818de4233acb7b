import logging
from typing import Callable, Dict, List, Literal, NamedTuple, Optional, Tuple

from src.embedding.types import EdgeId, FaceId, SeparationFlip, VertexId
from src.flipsearch.candidates import CandidateTuple, find_single_flip_candidates
from src.flipsearch.context import FlipContext
from src.flipsearch.uflips import FaceTable, evaluate_uflip, is_locally_maximal, max_uflip, sigmas_for
from src.treecotree.index import CycleHandle
from src.utils.errors import FlipSearchError, TreeCotreeError

logger = logging.getLogger(__name__)

SepCase = Literal["P11", "R11", "P10", "R10", "P0x", "R01"]


class SepFlipResult(NamedTuple):
    size: int
    sigma: Optional[SeparationFlip]


NO_FLIP = SepFlipResult(0, None)


def _better(a: SepFlipResult, b: SepFlipResult) -> SepFlipResult:
    return b if b.size > a.size else a


class _Search:
    """Per-call memo for choose_best_flip; the embedding does not change inside one search."""

    def __init__(self, ctx: FlipContext, u: VertexId, v: VertexId):
        self.ctx = ctx
        self.u = u
        self.v = v
        self.table = FaceTable(ctx.graph)
        self.memo: Dict[Tuple[FaceId, FaceId], SepFlipResult] = {}

    def best(self, f_u: Optional[FaceId], f_v: Optional[FaceId]) -> SepFlipResult:
        if f_u is None or f_v is None:
            return NO_FLIP
        key = (f_u, f_v)
        if key not in self.memo:
            self.memo[key] = choose_best_flip(self.ctx, self.u, self.v, f_u, f_v, self.table)
        return self.memo[key]


def _guarded(fn: Callable[[], SepFlipResult]) -> SepFlipResult:
    try:
        return fn()
    except TreeCotreeError as e:
        logger.debug("case skipped: %s", e)
        return NO_FLIP


def choose_best_flip(
    ctx: FlipContext,
    u: VertexId,
    v: VertexId,
    f_u: FaceId,
    f_v: FaceId,
    table: Optional[FaceTable] = None,
) -> SepFlipResult:
    """Size and corners of the locally maximal u-flip bounded by f_u, f_v, or (0, None)."""
    g, idx = ctx.graph, ctx.index
    table = table if table is not None and table.version == g.version else FaceTable(g)
    if f_u == f_v or u not in table.vertices[f_u] or u in table.vertices[f_v]:
        return NO_FLIP
    try:
        e = idx.path_end_edge("dual", f_u, f_v, "first")
        cycle = idx.fundamental_cycle(e)
        p_v = idx.projection(cycle, v)
        p_x, p_y = idx.cycle_neighbors(cycle, p_v)
    except TreeCotreeError:
        return NO_FLIP
    both = table.vertices[f_u] & table.vertices[f_v]
    if not any(w in both for w in cycle.vertices):
        return NO_FLIP

    for x, y in ((p_x, p_v), (p_v, p_y)):
        s_x = _nearest(idx, cycle, x, y, both)
        s_y = _nearest(idx, cycle, y, x, both)
        if s_x is None or s_y is None or s_x == s_y:
            continue
        # Among the corners at s_x, s_y on the two faces keep the u-flip with the smallest v side.
        best = None
        for sigma in sigmas_for(g, s_x, s_y, f_u, f_v):
            flip = evaluate_uflip(g, sigma, u, v)
            if flip is not None and (best is None or flip.size > best.size):
                best = flip
        if best is not None and is_locally_maximal(g, best.sigma, u, v):
            return SepFlipResult(best.size, best.sigma)
    return NO_FLIP


def _nearest(idx, cycle: CycleHandle, start: VertexId, away_from: VertexId, wanted) -> Optional[VertexId]:
    """First vertex of `wanted` on the cycle walking from `start` away from `away_from`."""
    a, b = idx.cycle_neighbors(cycle, start)
    toward = a if b == away_from else b
    for w in idx.cycle_walk(cycle, start, toward):
        if w in wanted:
            return w
    return None


# ---------------------------------------------------------------------- per-case searches


def _cycle_edges(idx, cycle: CycleHandle, w: VertexId, other: Optional[CycleHandle] = None, mode: str = "all") -> List[EdgeId]:
    """Edges of `cycle` at w, optionally restricted to those off or on `other`."""
    if w not in cycle.vertex_set:
        return []
    edges = list(dict.fromkeys(idx.cycle_edges_at(cycle, w)))
    if other is None or mode == "all":
        return edges
    if mode == "only":
        return [e for e in edges if e not in other.edge_set]
    return [e for e in edges if e in other.edge_set]


def _opposite(ctx, e: EdgeId, cycle: CycleHandle, f: FaceId) -> Optional[FaceId]:
    return ctx.index.face_of_edge_opposite(e, cycle, f)


def _same(ctx, e: EdgeId, cycles: List[CycleHandle], f: Optional[FaceId]) -> Optional[FaceId]:
    if f is None:
        return None
    return ctx.index.face_of_edge_on_side(e, cycles, f)


def _first_face_with(ctx, a: Optional[FaceId], b: Optional[FaceId], p_x: VertexId, p_y: VertexId) -> Optional[FaceId]:
    if a is None or b is None:
        return None
    hit = ctx.index.mark_and_search("dual", a, b, marks=(p_x, p_y), goal="first", side="any")
    return hit.node if hit else None


def _meet_all(search: _Search, f_u: FaceId, anchor, xs, ys) -> SepFlipResult:
    """Best flip against the meeting face of anchor with each pair from xs, ys."""
    result = NO_FLIP
    for f_x in xs:
        for f_y in ys:
            if anchor is None or f_x is None or f_y is None:
                continue
            result = _better(result, search.best(f_u, search.ctx.index.meet("dual", anchor, f_x, f_y)))
    return result


def _sep_p11(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    bar_fu = _opposite(ctx, e_u_, cycle, f_u)
    bar_fv = _opposite(ctx, e_v_, cycle, f_u)
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x == p_y:
        return NO_FLIP
    return search.best(f_u, _first_face_with(ctx, bar_fv, bar_fu, p_x, p_y))


def _sep_p10(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    f_v_ = _same(ctx, e_v_, [cycle], f_u)
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x == p_y:
        return NO_FLIP
    return search.best(f_u, _first_face_with(ctx, f_v_, f_u, p_x, p_y))


def _sep_r11(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    bar_fu = _opposite(ctx, e_u_, cycle, f_u)
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x == p_y or bar_fu is None:
        return NO_FLIP
    xs = [_same(ctx, e, [cycle], bar_fu) for e in _cycle_edges(idx, cycle, p_x)]
    ys = [_same(ctx, e, [cycle], bar_fu) for e in _cycle_edges(idx, cycle, p_y)]
    return _meet_all(search, f_u, bar_fu, xs, ys)


def _sep_r10(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    f_v_ = _same(ctx, e_v_, [cycle], f_u)
    if f_v_ is None:
        return NO_FLIP
    other = idx.fundamental_cycle(idx.graph.find_edge(x, y))
    both = [cycle, other]
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x != p_y:
        mode = "only" if e_u_ in other.edge_set else "shared"
        e_x = _cycle_edges(idx, other, p_x, cycle, "only") + _cycle_edges(idx, cycle, p_x, other, mode)
        e_y = _cycle_edges(idx, other, p_y, cycle, "only") + _cycle_edges(idx, cycle, p_y, other, mode)
    else:
        e_x = _cycle_edges(idx, other, idx.projection(other, search.v))
        e_y = _cycle_edges(idx, cycle, idx.projection(cycle, search.u))
    xs = [_same(ctx, e, both, f_v_) for e in e_x]
    ys = [_same(ctx, e, both, f_v_) for e in e_y]
    return _meet_all(search, f_u, f_v_, xs, ys)


def _sep_p0x(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    bar_fu = _opposite(ctx, e_u_, cycle, f_u)
    if bar_fu is None:
        return NO_FLIP
    xy = idx.graph.find_edge(x, y)
    other = idx.fundamental_cycle(xy)
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x == p_y:
        return NO_FLIP
    bar_f = _same(ctx, xy, [other], bar_fu)
    return search.best(f_u, _first_face_with(ctx, bar_f, bar_fu, p_x, p_y))


def _sep_r01(search: _Search, f_u, cycle, e_u_, e_v_, x, y) -> SepFlipResult:
    ctx, idx = search.ctx, search.ctx.index
    bar_fu = _opposite(ctx, e_u_, cycle, f_u)
    if bar_fu is None:
        return NO_FLIP
    other = idx.fundamental_cycle(idx.graph.find_edge(x, y))
    both = [cycle, other]
    p_x, p_y = idx.projection(cycle, x), idx.projection(cycle, y)
    if p_x != p_y:
        mode = "only" if e_v_ in other.edge_set else "shared"
        e_x = _cycle_edges(idx, cycle, p_x, other, mode) + _cycle_edges(idx, other, p_x, cycle, "only")
        e_y = _cycle_edges(idx, cycle, p_y, other, mode) + _cycle_edges(idx, other, p_y, cycle, "only")
    else:
        e_x = _cycle_edges(idx, cycle, idx.projection(cycle, search.v))
        e_y = _cycle_edges(idx, other, idx.projection(other, search.u))
    xs = [_same(ctx, e, both, bar_fu) for e in e_x]
    ys = [_same(ctx, e, both, bar_fu) for e in e_y]
    return _meet_all(search, f_u, bar_fu, xs, ys)


_CASES = {
    "P11": _sep_p11,
    "R11": _sep_r11,
    "P10": _sep_p10,
    "R10": _sep_r10,
    "P0x": _sep_p0x,
    "R01": _sep_r01,
}


def find_sep_case(
    ctx: FlipContext,
    tag: SepCase,
    u: VertexId,
    v: VertexId,
    f_u: FaceId,
    cycle: CycleHandle,
    e_u_: EdgeId,
    e_v_: EdgeId,
    x: VertexId,
    y: VertexId,
    search: Optional[_Search] = None,
) -> SepFlipResult:
    """Maximal u-flip for one structural case of the first blocking node."""
    search = search or _Search(ctx, u, v)
    return _guarded(lambda: _CASES[tag](search, f_u, cycle, e_u_, e_v_, x, y))


def find_first_separation_flip(ctx: FlipContext, u: VertexId, v: VertexId) -> SepFlipResult:
    """A maximal u-flip for biconnected, non-cofacial u and v (or (0, None))."""
    g, idx = ctx.graph, ctx.index
    search = _Search(ctx, u, v)
    candidates = find_single_flip_candidates(ctx, u, v)

    for cand in candidates:
        if v in search.table.vertices[cand.f_v]:
            found = search.best(cand.f_u, cand.f_v)
            if found.size > 0:
                return found

    result = NO_FLIP
    v_face = g.face_of_corner(g.corners_at(v)[0])
    for cand in candidates:
        f_u, cycle = cand.f_u, cand.cycle
        f_v_ = idx.face_of_edge_on_side(cand.e_v, [cycle], f_u)
        if f_v_ is not None and f_v_ != f_u:
            try:
                x, y = g.endpoints(idx.path_end_edge("dual", f_u, f_v_, "first"))
            except TreeCotreeError:
                x = y = None
            if x is not None:
                for tag in ("P11", "R11", "P10", "R10"):
                    result = _better(result, find_sep_case(ctx, tag, u, v, f_u, cycle, cand.e_u, cand.e_v, x, y, search))

        def tail() -> SepFlipResult:
            best = NO_FLIP
            p_v = idx.projection(cycle, v)
            bar = [idx.face_of_edge_opposite(e, cycle, f_u) for e in dict.fromkeys(idx.cycle_edges_at(cycle, p_v))]
            bar = [f for f in bar if f is not None]
            if not bar:
                return best
            bar_1 = idx.meet("dual", bar[0], bar[-1], v_face)
            best = _better(best, search.best(f_u, bar_1))
            for bar_2 in dict.fromkeys(bar):
                if bar_2 == bar_1:
                    continue
                x2, y2 = g.endpoints(idx.path_end_edge("dual", bar_1, bar_2, "first"))
                for tag in ("P0x", "R01"):
                    best = _better(best, find_sep_case(ctx, tag, u, v, f_u, cycle, cand.e_u, cand.e_v, x2, y2, search))
            return best

        result = _better(result, _guarded(tail))
    return result


def do_separation_flips(ctx: FlipContext, u: VertexId, v: VertexId) -> bool:
    """Flip strictly growing u-flip-components until u and v share a face.

    Returns False when no larger u-flip exists, i.e. G + (u,v) is nonplanar.
    """
    g = ctx.graph
    size = 0
    while ctx.index.linkable(u, v) is None:
        try:
            found = find_first_separation_flip(ctx, u, v)
        except (TreeCotreeError, FlipSearchError) as e:
            logger.warning("candidate search failed for (%d,%d): %s", u, v, e)
            found = NO_FLIP
        if len(g.component_edges(u)) <= ctx.settings.exhaustive_edge_limit:
            exact = max_uflip(g, u, v)
            if exact is not None and exact.size > max(found.size, size):
                if found.size > size:
                    logger.info("candidate flip of size %d for (%d,%d) replaced by maximal size %d", found.size, u, v, exact.size)
                else:
                    logger.warning("candidate search missed a u-flip of size %d for (%d,%d)", exact.size, u, v)
                found = SepFlipResult(exact.size, exact.sigma)
        if found.sigma is None or found.size <= size:
            logger.debug("no u-flip larger than %d for (%d,%d)", size, u, v)
            return False
        ctx.separation_flip(found.sigma, u, v, found.size)
        size = found.size
    return True
