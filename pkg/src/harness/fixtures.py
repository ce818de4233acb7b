"""Named small graphs used by tests and the `oracle` subcommand.

Fixtures with a fixed starting embedding give counterclockwise neighbour
orders; the others take whatever embedding the static embedder returns.
"""
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.dynamic.planar import PlanarDynamicGraph
from src.embedding.graph import EmbeddedGraph
from src.embedding.rotation_io import from_neighbor_orders
from src.oracle.static import EdgeListGraph, find_embedding_static
from src.utils.config import Settings
from src.utils.errors import OracleError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Fixture:
    n: int
    edges: Tuple[Edge, ...]
    orders: Optional[Dict[int, Tuple[int, ...]]] = None


_CHAIN3_EDGES = ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6))
_CHAIN3_ORDERS = {0: (1, 2), 1: (2, 0), 2: (0, 1, 3, 4), 3: (4, 2), 4: (2, 3, 5, 6), 5: (6, 4), 6: (4, 5)}

FIXTURES: Dict[str, Fixture] = {
    "TRI": Fixture(3, ((0, 1), (1, 2), (0, 2))),
    "PATH3": Fixture(3, ((0, 1), (1, 2))),
    "C4": Fixture(4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "K4": Fixture(4, tuple(itertools.combinations(range(4), 2))),
    "K5": Fixture(5, tuple(itertools.combinations(range(5), 2))),
    "K3_3": Fixture(6, tuple((a, b) for a in range(3) for b in range(3, 6))),
    "CUBE": Fixture(8, tuple((a, a | bit) for a in range(8) for bit in (1, 2, 4) if not a & bit)),
    "BOWTIE": Fixture(
        5,
        ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)),
        {0: (1, 2), 1: (2, 0), 2: (0, 1, 3, 4), 3: (4, 2), 4: (2, 3)},
    ),
    "CHAIN3": Fixture(7, _CHAIN3_EDGES, _CHAIN3_ORDERS),
    # third triangle wrapped around the second one's corner at 4
    "CHAIN3_NESTED": Fixture(7, _CHAIN3_EDGES, {**_CHAIN3_ORDERS, 4: (2, 5, 6, 3)}),
    "CHAIN3_SPLIT": Fixture(7, _CHAIN3_EDGES, {**_CHAIN3_ORDERS, 2: (0, 1, 4, 3)}),
    # hubs s=0, t=1 joined through x1..x4 = 2..5
    "K2_4": Fixture(
        6,
        tuple((hub, x) for hub in (0, 1) for x in range(2, 6)),
        {0: (2, 3, 4, 5), 1: (5, 4, 3, 2), 2: (0, 1), 3: (0, 1), 4: (0, 1), 5: (0, 1)},
    ),
}


def _get(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise OracleError(f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}") from None


def build(name: str) -> Tuple[int, List[Edge]]:
    fixture = _get(name)
    return fixture.n, list(fixture.edges)


def embedding(name: str) -> EmbeddedGraph:
    fixture = _get(name)
    orders = fixture.orders
    if orders is None:
        orders = find_embedding_static(EdgeListGraph(fixture.n, list(fixture.edges)))
        if orders is None:
            raise OracleError(f"fixture {name} is not planar")
    return from_neighbor_orders(fixture.n, list(fixture.edges), orders)


def embedded(name: str, settings: Optional[Settings] = None) -> PlanarDynamicGraph:
    return PlanarDynamicGraph.from_embedding(embedding(name), settings)
