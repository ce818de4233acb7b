"""Hypothesis strategies for small graphs."""
import itertools
from typing import List, Tuple

import networkx as nx
from hypothesis import strategies as st
from hypothesis.strategies import DrawFn, composite

Edge = Tuple[int, int]


@composite
def edge_lists(draw: DrawFn, min_n: int = 2, max_n: int = 7, max_edges: int = 12) -> Tuple[int, List[Edge]]:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=min(max_edges, len(pairs))))
    return n, chosen


@composite
def planar_edge_lists(draw: DrawFn, min_n: int = 2, max_n: int = 7, max_edges: int = 12) -> Tuple[int, List[Edge]]:
    """Random simple graphs, keeping each edge only while the graph stays planar."""
    n, candidates = draw(edge_lists(min_n=min_n, max_n=max_n, max_edges=max_edges))
    G = nx.Graph()
    G.add_nodes_from(range(n))
    kept: List[Edge] = []
    for e in candidates:
        G.add_edge(*e)
        if nx.check_planarity(G)[0]:
            kept.append(e)
        else:
            G.remove_edge(*e)
    return n, kept


@composite
def connected_planar_edge_lists(draw: DrawFn, max_n: int = 6, max_edges: int = 9) -> Tuple[int, List[Edge]]:
    """Connected planar graphs: a random spanning tree plus random planar chords."""
    n = draw(st.integers(min_value=3, max_value=max_n))
    tree = [(draw(st.integers(min_value=0, max_value=v - 1)), v) for v in range(1, n)]
    G = nx.Graph(tree)
    extra = [p for p in itertools.combinations(range(n), 2) if not G.has_edge(*p)]
    chords = draw(st.lists(st.sampled_from(extra), unique=True, max_size=max(0, max_edges - len(tree)))) if extra else []
    for e in chords:
        G.add_edge(*e)
        if not nx.check_planarity(G)[0]:
            G.remove_edge(*e)
    return n, sorted((min(a, b), max(a, b)) for a, b in G.edges)


def vertex_pairs(n: int):
    return st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
