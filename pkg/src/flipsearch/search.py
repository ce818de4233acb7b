import logging

from src.embedding.types import VertexId
from src.flipsearch.articulation import block_cut_path, do_articulation_flips, find_next_flip_block
from src.flipsearch.context import FlipContext
from src.flipsearch.separation import do_separation_flips
from src.utils.errors import DifferentComponents, SameNode

logger = logging.getLogger(__name__)


def multi_flip_linkable(ctx: FlipContext, u: VertexId, v: VertexId) -> bool:
    """Flip the embedding until u and v share a face; False iff G + (u,v) is nonplanar.

    Walks the cut vertices between u and v. For each block it first makes the
    two cut vertices bounding it co-facial with separation flips, then slides
    whole classes at those cut vertices so that u keeps seeing the next block.
    """
    if u == v:
        raise SameNode(f"cannot link {u} to itself")
    g = ctx.graph
    if not g.same_component(u, v):
        raise DifferentComponents(f"{u} and {v} are in different components")
    if ctx.index.linkable(u, v) is not None:
        return True

    seq = block_cut_path(g, u, v)
    logger.debug("block-cut path for (%d,%d): %s", u, v, seq)
    i = 0
    while seq[i] != v:
        u_, v_ = seq[i], seq[i + 1]
        if not do_separation_flips(ctx, u_, v_):
            logger.info("(%d,%d) rejected: block between %d and %d admits no linking flip", u, v, u_, v_)
            return False
        do_articulation_flips(ctx, u, u_, v_, v)
        nxt = find_next_flip_block(ctx, u, u_, v_, v, seq)
        i = max(seq.index(nxt), i + 1)

    if ctx.index.linkable(u, v) is None:
        logger.error("flip search for (%d,%d) finished without a common face", u, v)
        return False
    return True
