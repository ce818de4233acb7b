"""critical-cost and solid-cost: summed flip distances to the embeddings admitting each strut."""
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Literal, Optional

from src.decomposition.bc import Edge
from src.embedding.types import VertexId
from src.oracle.distances import Tau, dist
from src.oracle.embedding_space import EmbeddingKey, EmbeddingSpace
from src.oracle.struts import StrutSet, struts
from src.utils.errors import InfiniteCost

Which = Literal["critical", "solid"]


@dataclass(frozen=True)
class CostVector:
    clean: int
    sep: int
    P: int

    def __getitem__(self, tau: Tau) -> int:
        return getattr(self, tau)

    def chain_holds(self) -> bool:
        return self.clean >= self.sep >= self.P >= 0


def strut_cost(space: EmbeddingSpace, tau: Tau, h: EmbeddingKey, pairs: Iterable[Edge]) -> int:
    total = 0
    for x, y in pairs:
        d = dist(tau, space, h, space.admitting(x, y))
        if math.isinf(d):
            raise InfiniteCost(f"no clean flip path reaches an embedding admitting ({x},{y})")
        total += int(d)
    return total


def cost(
    space: EmbeddingSpace,
    tau: Tau,
    h: EmbeddingKey,
    u: VertexId,
    v: VertexId,
    which: Which = "critical",
    strut_set: Optional[StrutSet] = None,
) -> int:
    strut_set = strut_set or struts(space.edges, u, v)
    pairs = strut_set.critical if which == "critical" else strut_set.solid
    return strut_cost(space, tau, h, pairs)


def cost_vector(space: EmbeddingSpace, h: EmbeddingKey, pairs: Iterable[Edge]) -> CostVector:
    pairs = list(pairs)
    return CostVector(*(strut_cost(space, tau, h, pairs) for tau in ("clean", "sep", "P")))


def emb_star(space: EmbeddingSpace, strut_set: StrutSet) -> FrozenSet[EmbeddingKey]:
    """Good embeddings for (u, v): those admitting every solid strut at once."""
    return space.admitting_all(strut_set.solid)
