import logging
from collections import deque
from typing import Dict, List, Optional, Set, Tuple

from src.embedding.types import VertexId

logger = logging.getLogger(__name__)

Edge = Tuple[VertexId, VertexId]


def norm(u: VertexId, v: VertexId) -> Edge:
    return (u, v) if u < v else (v, u)


class ConnectivityForest:
    """Component labels over a fully-dynamic simple graph.

    A spanning forest is kept as a set of tree edges. Inserting merges the
    smaller component into the larger; deleting a tree edge rescans the
    component and relabels the smaller side when it splits.
    """

    def __init__(self, n: int):
        self.adj: List[Set[VertexId]] = [set() for _ in range(n)]
        self.label: List[int] = list(range(n))
        self.members: Dict[int, Set[VertexId]] = {v: {v} for v in range(n)}
        self.tree: Set[Edge] = set()
        self._next_label = n

    def find(self, v: VertexId) -> int:
        return self.label[v]

    def connected(self, u: VertexId, v: VertexId) -> bool:
        return self.label[u] == self.label[v]

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return v in self.adj[u]

    def _relabel(self, vertices: Set[VertexId], new: int) -> None:
        for w in vertices:
            self.label[w] = new
        self.members.setdefault(new, set()).update(vertices)

    def insert(self, u: VertexId, v: VertexId) -> Optional[Tuple[int, int]]:
        """Add (u,v). Returns (kept, absorbed) labels when two components merge."""
        self.adj[u].add(v)
        self.adj[v].add(u)
        a, b = self.label[u], self.label[v]
        if a == b:
            return None
        if len(self.members[a]) < len(self.members[b]):
            a, b = b, a
        self._relabel(self.members.pop(b), a)
        self.tree.add(norm(u, v))
        return a, b

    def _reach(self, start: VertexId) -> Set[VertexId]:
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def _rebuild_tree(self, vertices: Set[VertexId]) -> None:
        self.tree = {e for e in self.tree if e[0] not in vertices}
        seen: Set[VertexId] = set()
        for start in sorted(vertices):
            if start in seen:
                continue
            seen.add(start)
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        self.tree.add(norm(x, y))
                        queue.append(y)

    def delete(self, u: VertexId, v: VertexId) -> Optional[Tuple[int, int]]:
        """Remove (u,v). Returns (old, new) labels when the component splits."""
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        e = norm(u, v)
        if e not in self.tree:
            return None
        old = self.label[u]
        side = self._reach(u)
        if v in side:
            self._rebuild_tree(self.members[old])
            return None
        self.tree.discard(e)
        moved = side if len(side) <= len(self.members[old]) - len(side) else self.members[old] - side
        new = self._next_label
        self._next_label += 1
        self.members[old] -= moved
        self._relabel(moved, new)
        logger.debug("component %d split off %d vertices as %d", old, len(moved), new)
        return old, new
