import logging
from typing import Optional

from src.embedding.graph import EmbeddedGraph
from src.embedding.types import ArticulationFlip, SeparationFlip
from src.flipsearch.flip_log import FlipLog, FlipRecord
from src.treecotree.index import TreeCotreeIndex
from src.utils.config import DEFAULT_SETTINGS, Settings
from src.utils.errors import CriticalityViolation, FlipBudgetExceeded

logger = logging.getLogger(__name__)


class FlipContext:
    """Embedding, tree-cotree index, settings and flip log under one handle."""

    def __init__(
        self,
        graph: EmbeddedGraph,
        settings: Optional[Settings] = None,
        log: Optional[FlipLog] = None,
        index: Optional[TreeCotreeIndex] = None,
    ):
        self.graph = graph
        self.settings = settings or DEFAULT_SETTINGS
        self.index = index or TreeCotreeIndex(graph, self.settings.backend)
        self.log = log or FlipLog()

    def _check_budget(self) -> None:
        budget = self.settings.flip_budget(self.graph.num_edges, self.graph.n)
        if self.log.flips_this_op >= budget:
            raise FlipBudgetExceeded(f"more than {budget} flips in a single operation")

    def _check_critical(self, critical: bool, u: int, v: int) -> None:
        if not critical and self.settings.check_critical:
            raise CriticalityViolation(f"flip for ({u},{v}) does not separate u from v")

    def separation_flip(self, sigma: SeparationFlip, u: int, v: int, size: int = 0) -> SeparationFlip:
        self._check_budget()
        plan = self.graph.plan_separation(sigma)
        critical = (u in plan.vertices) != (v in plan.vertices)
        self._check_critical(critical, u, v)
        kind = "P" if min(plan.classes_inside, plan.classes_outside) >= 2 else "SR"
        inverse = self.graph.separation_flip(sigma)
        self.log.add(FlipRecord(kind, sigma, u, v, critical, clean=plan.clean, size=size))
        logger.debug("%s flip at {%d,%d} for (%d,%d), size %d", kind, plan.s, plan.t, u, v, size)
        return inverse

    def articulation_flip(self, flip: ArticulationFlip, u: int, v: int) -> ArticulationFlip:
        self._check_budget()
        plan = self.graph.plan_articulation(flip)
        critical = (u in plan.vertices) != (v in plan.vertices)
        self._check_critical(critical, u, v)
        inverse = self.graph.articulation_flip(flip)
        subkind = "reflect" if flip.reflect else "slide"
        self.log.add(FlipRecord("articulation", flip, u, v, critical, subkind=subkind, size=len(plan.edges)))
        logger.debug("articulation %s at %d for (%d,%d)", subkind, plan.a, u, v)
        return inverse
