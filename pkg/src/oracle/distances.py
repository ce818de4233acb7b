"""Flip distances on an embedding space.

All three distances walk clean flips only. dist_clean counts every flip,
dist_sep counts separation flips (SR and P), dist_P counts P flips.
"""
import math
from collections import deque
from typing import Dict, FrozenSet, Iterable, Literal

from src.oracle.embedding_space import EmbeddingKey, EmbeddingSpace, FlipEdge

Tau = Literal["clean", "sep", "P"]
TAUS = ("clean", "sep", "P")

_WEIGHTED = {
    "clean": ("articulation", "SR", "P"),
    "sep": ("SR", "P"),
    "P": ("P",),
}


def flip_weight(tau: Tau, edge: FlipEdge) -> int:
    return 1 if edge.kind in _WEIGHTED[tau] else 0


def distances_to(space: EmbeddingSpace, tau: Tau, targets: Iterable[EmbeddingKey]) -> Dict[EmbeddingKey, float]:
    """dist_tau from every embedding to the target set (0-1 BFS from the targets).

    Flips come in inverse pairs of equal type and cleanliness, so searching
    outward from the targets gives the distance towards them.
    """
    targets = frozenset(targets)
    cache_key = (tau, targets)
    if cache_key in space._distances:
        return space._distances[cache_key]
    dist: Dict[EmbeddingKey, float] = {key: math.inf for key in space.nodes}
    queue = deque()
    for key in targets:
        dist[key] = 0
        queue.append(key)
    while queue:
        key = queue.popleft()
        for edge in space.flips(key):
            if not edge.clean:
                continue
            w = flip_weight(tau, edge)
            if dist[key] + w < dist[edge.target]:
                dist[edge.target] = dist[key] + w
                if w == 0:
                    queue.appendleft(edge.target)
                else:
                    queue.append(edge.target)
    space._distances[cache_key] = dist
    return dist


def dist(tau: Tau, space: EmbeddingSpace, h: EmbeddingKey, targets: FrozenSet[EmbeddingKey]) -> float:
    """dist_tau(H, S); math.inf when S is empty or out of reach."""
    return distances_to(space, tau, targets)[h]


def pair_distance(tau: Tau, space: EmbeddingSpace, a: EmbeddingKey, b: EmbeddingKey) -> float:
    return dist(tau, space, a, frozenset([b]))
