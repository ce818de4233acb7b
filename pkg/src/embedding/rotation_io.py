import re
from typing import Dict, List, Optional, Tuple

from src.embedding.graph import EmbeddedGraph
from src.utils.errors import ParseError

_DART = re.compile(r"^(\d+)>(\d+)#(\d+)$")


def dart_name(g: EmbeddedGraph, d: int) -> str:
    return f"{g.origin(d)}>{g.head(d)}#{d >> 1}"


def dump_rotations(g: EmbeddedGraph) -> str:
    """One line per vertex: `v: u>w#i ...` in counterclockwise order."""
    lines = []
    for v in range(g.n):
        names = " ".join(dart_name(g, d) for d in g.darts_at(v))
        lines.append(f"{v}: {names}".rstrip())
    return "\n".join(lines) + "\n"


def load_rotations(text: str) -> EmbeddedGraph:
    """Inverse of dump_rotations; the first occurrence of edge i becomes dart 2i."""
    rows: List[Tuple[int, List[Tuple[int, int, int]]]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise ParseError(line_no, "expected 'v: darts...'", raw)
        v = int(head)
        if v != len(rows):
            raise ParseError(line_no, f"vertex lines out of order (got {v}, expected {len(rows)})", raw)
        darts = []
        for token in rest.split():
            m = _DART.match(token)
            if not m:
                raise ParseError(line_no, f"bad dart name {token!r}", raw)
            a, b, e = (int(x) for x in m.groups())
            if a != v:
                raise ParseError(line_no, f"dart {token} listed at vertex {v}", raw)
            darts.append((a, b, e))
        rows.append((v, darts))

    n = len(rows)
    first: Dict[int, Tuple[int, int]] = {}
    for v, darts in rows:
        for a, b, e in darts:
            first.setdefault(e, (a, b))
    m = max(first) + 1 if first else 0
    edges: List[Optional[Tuple[int, int]]] = [first.get(e) for e in range(m)]
    rotations = []
    for v, darts in rows:
        order = []
        for a, b, e in darts:
            u0, v0 = first[e]
            if (a, b) == (u0, v0):
                order.append(2 * e)
            elif (a, b) == (v0, u0):
                order.append(2 * e + 1)
            else:
                raise ParseError(v + 1, f"edge {e} has inconsistent endpoints")
        rotations.append(order)
    return EmbeddedGraph.from_rotations(n, edges, rotations)


def from_neighbor_orders(n: int, edges: List[Tuple[int, int]], orders: Dict[int, Tuple[int, ...]]) -> EmbeddedGraph:
    """Embed a simple graph given counterclockwise neighbour orders per vertex."""
    dart_of: Dict[Tuple[int, int], int] = {}
    for i, (a, b) in enumerate(edges):
        dart_of[(a, b)] = 2 * i
        dart_of[(b, a)] = 2 * i + 1
    rotations = [[dart_of[(v, w)] for w in orders.get(v, ())] for v in range(n)]
    return EmbeddedGraph.from_rotations(n, list(edges), rotations)
