"""Seeded workload generators producing trace text."""
import logging
import random
from typing import List, Literal, Set, Tuple

from src.harness.trace import TraceOp, format_trace
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Model = Literal["random", "planar-growth", "churn"]
MODELS: Tuple[str, ...] = ("random", "planar-growth", "churn")

Edge = Tuple[int, int]


def churn_band(n: int) -> Tuple[int, int]:
    """Edge-count band the churn model stays inside once it has warmed up."""
    pairs = n * (n - 1) // 2
    low = min(max(1, n // 2), pairs - 1)
    high = min(pairs, 2 * n)
    return low, high


class _EdgeSampler:
    def __init__(self, n: int, rng: random.Random):
        self.n = n
        self.rng = rng
        self.edges: Set[Edge] = set()
        self._order: List[Edge] = []

    @property
    def full(self) -> bool:
        return len(self.edges) == self.n * (self.n - 1) // 2

    def non_edge(self) -> Edge:
        pairs = self.n * (self.n - 1) // 2
        if len(self.edges) * 2 < pairs:
            while True:
                u, v = self.rng.sample(range(self.n), 2)
                e = (min(u, v), max(u, v))
                if e not in self.edges:
                    return e
        free = [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in self.edges]
        return self.rng.choice(free)

    def pair(self) -> Edge:
        u, v = self.rng.sample(range(self.n), 2)
        return (min(u, v), max(u, v))

    def add(self, e: Edge) -> TraceOp:
        self.edges.add(e)
        self._order.append(e)
        return TraceOp("I", e)

    def remove_random(self) -> TraceOp:
        e = self.rng.choice(self._order)
        self.edges.discard(e)
        self._order.remove(e)
        return TraceOp("D", e)


def _random_ops(sampler: _EdgeSampler, ops: int) -> List[TraceOp]:
    rng = sampler.rng
    out: List[TraceOp] = []
    for _ in range(ops):
        code = rng.choice("IDQPC")
        if code == "I" and sampler.full:
            code = "D"
        if code == "D" and not sampler.edges:
            code = "I"
        if code == "I":
            out.append(sampler.add(sampler.non_edge()))
        elif code == "D":
            out.append(sampler.remove_random())
        elif code == "Q":
            out.append(TraceOp("Q", sampler.pair()))
        elif code == "P":
            out.append(TraceOp("P", ()))
        else:
            out.append(TraceOp("C", (rng.randrange(sampler.n),)))
    return out


def _growth_ops(sampler: _EdgeSampler, ops: int) -> List[TraceOp]:
    out: List[TraceOp] = []
    while len(out) < ops and not sampler.full:
        out.append(sampler.add(sampler.non_edge()))
    return out


def _churn_ops(sampler: _EdgeSampler, ops: int) -> List[TraceOp]:
    low, high = churn_band(sampler.n)
    out: List[TraceOp] = []
    while len(out) < ops and len(sampler.edges) < low:
        out.append(sampler.add(sampler.non_edge()))
    step = 0
    while len(out) < ops:
        size = len(sampler.edges)
        want_insert = step % 2 == 0
        if want_insert and size >= high:
            want_insert = False
        elif not want_insert and size <= low:
            want_insert = True
        out.append(sampler.add(sampler.non_edge()) if want_insert else sampler.remove_random())
        step += 1
    return out


def generate_ops(model: str, n: int, ops: int, seed: int) -> List[TraceOp]:
    if model not in MODELS:
        raise ConfigError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
    if n < 2:
        raise ConfigError(f"workloads need at least 2 vertices, got n={n}")
    sampler = _EdgeSampler(n, random.Random(seed))
    if model == "random":
        result = _random_ops(sampler, ops)
    elif model == "planar-growth":
        result = _growth_ops(sampler, ops)
    else:
        result = _churn_ops(sampler, ops)
    logger.debug("generated %d %s ops over n=%d (seed %d)", len(result), model, n, seed)
    return result


def generate_trace(model: str, n: int, ops: int, seed: int) -> str:
    """Trace text for one workload; identical arguments give identical text."""
    return format_trace(n, generate_ops(model, n, ops, seed))
