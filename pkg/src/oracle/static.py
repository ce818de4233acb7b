import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import networkx as nx

from src.utils.errors import OracleError

logger = logging.getLogger(__name__)

Rotation = Dict[int, Tuple[int, ...]]


@dataclass
class EdgeListGraph:
    n: int
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise OracleError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise OracleError(f"edge ({u},{v}) out of range for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise OracleError(f"duplicate edge {key}")
            seen.add(key)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def _adjacency(n: int, edges: List[Tuple[int, int]]) -> Dict[int, List[int]]:
    adj: Dict[int, List[int]] = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def rotation_systems(n: int, edges: List[Tuple[int, int]]) -> Iterator[Rotation]:
    """Every rotation system: one cyclic order per vertex, first neighbour fixed."""
    adj = _adjacency(n, edges)
    per_vertex = []
    for v in range(n):
        nbrs = adj[v]
        if len(nbrs) <= 2:
            per_vertex.append([tuple(nbrs)])
        else:
            per_vertex.append([(nbrs[0],) + rest for rest in itertools.permutations(nbrs[1:])])
    for combo in itertools.product(*per_vertex):
        yield {v: combo[v] for v in range(n)}


def count_faces(rotation: Rotation) -> int:
    """Face orbits of a rotation system, walking dart (u,v) to (v, successor of u at v)."""
    position = {v: {w: i for i, w in enumerate(order)} for v, order in rotation.items()}
    seen = set()
    faces = 0
    for u, order in rotation.items():
        for v in order:
            if (u, v) in seen:
                continue
            faces += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                ring = rotation[b]
                a, b = b, ring[(position[b][a] + 1) % len(ring)]
    return faces


def is_genus_zero(n: int, edges: List[Tuple[int, int]], rotation: Rotation) -> bool:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    components = nx.number_connected_components(g)
    isolated = sum(1 for v in range(n) if not rotation[v])
    # Euler summed over components: V - E + F = 2C, isolated vertices carry one face each.
    return n - len(edges) + count_faces(rotation) + isolated == 2 * components


def is_planar_by_enumeration(graph: EdgeListGraph) -> bool:
    return any(is_genus_zero(graph.n, graph.edges, r) for r in rotation_systems(graph.n, graph.edges))


def _euler_bound_fails(graph: EdgeListGraph) -> bool:
    return graph.n >= 3 and len(graph.edges) > 3 * graph.n - 6


def is_planar_static(graph: EdgeListGraph, cross_check_limit: int = 9) -> bool:
    """Left-right planarity test, cross-checked by enumeration on small inputs."""
    if _euler_bound_fails(graph):
        return False
    planar, _ = nx.check_planarity(graph.to_networkx())
    if len(graph.edges) <= cross_check_limit:
        enumerated = is_planar_by_enumeration(graph)
        if enumerated != planar:
            raise OracleError(f"static oracles disagree on {graph.edges}: lr={planar} enum={enumerated}")
    return planar


def find_embedding_static(graph: EdgeListGraph) -> Optional[Rotation]:
    """A genus-0 rotation system (counterclockwise neighbour orders), or None."""
    if _euler_bound_fails(graph):
        return None
    planar, embedding = nx.check_planarity(graph.to_networkx())
    if not planar:
        return None
    # networkx stores clockwise orders; ours are counterclockwise.
    return {v: tuple(reversed(list(embedding.neighbors_cw_order(v)))) for v in range(graph.n)}
