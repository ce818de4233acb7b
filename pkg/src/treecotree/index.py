import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Tuple

from src.embedding.graph import EmbeddedGraph
from src.embedding.types import Corner, EdgeId, FaceId, ValidationReport, VertexId
from src.utils.errors import DifferentComponents, NotOnCycle, SameNode, TreeEdge

logger = logging.getLogger(__name__)

TreeKind = Literal["primal", "dual"]
Side = Literal["left", "right", "both", "any"]


class _Forest:
    """Rooted forest with parent pointers; nodes are vertices or faces."""

    def __init__(self):
        self.parent: Dict[int, Optional[int]] = {}
        self.parent_edge: Dict[int, Optional[int]] = {}
        self.depth: Dict[int, int] = {}
        self.root: Dict[int, int] = {}

    def add(self, node: int, parent: Optional[int], edge: Optional[int]) -> None:
        self.parent[node] = parent
        self.parent_edge[node] = edge
        if parent is None:
            self.depth[node] = 0
            self.root[node] = node
        else:
            self.depth[node] = self.depth[parent] + 1
            self.root[node] = self.root[parent]

    def same_tree(self, *nodes: int) -> bool:
        return len({self.root[x] for x in nodes}) == 1

    def lca(self, a: int, b: int) -> int:
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        while a != b:
            a, b = self.parent[a], self.parent[b]
        return a

    def path(self, a: int, b: int) -> Tuple[List[int], List[int]]:
        """Nodes and edges of the tree path a..b, in order from a."""
        top = self.lca(a, b)
        up_nodes, up_edges = [a], []
        while up_nodes[-1] != top:
            up_edges.append(self.parent_edge[up_nodes[-1]])
            up_nodes.append(self.parent[up_nodes[-1]])
        down_nodes, down_edges = [b], []
        while down_nodes[-1] != top:
            down_edges.append(self.parent_edge[down_nodes[-1]])
            down_nodes.append(self.parent[down_nodes[-1]])
        return up_nodes + down_nodes[-2::-1], up_edges + down_edges[::-1]

    def is_ancestor(self, a: int, b: int) -> bool:
        if self.root[a] != self.root[b] or self.depth[b] < self.depth[a]:
            return False
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        return a == b

    def meet(self, x: int, y: int, z: int) -> int:
        candidates = (self.lca(x, y), self.lca(y, z), self.lca(x, z))
        return max(candidates, key=lambda node: self.depth[node])


@dataclass(frozen=True)
class CycleHandle:
    """Fundamental cycle closed by the non-tree edge `edge`.

    `vertices` runs along the tree path from one endpoint of `edge` to the
    other; `edges[i]` joins vertices[i] and vertices[i+1] and the last entry
    is `edge` itself, closing the cycle.
    """

    edge: EdgeId
    vertices: Tuple[VertexId, ...]
    edges: Tuple[EdgeId, ...]

    @property
    def vertex_set(self) -> FrozenSet[VertexId]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> FrozenSet[EdgeId]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SearchHit:
    node: int
    left: Optional[Corner] = None
    right: Optional[Corner] = None


class TreeCotreeIndex:
    """Primal BFS spanning forest plus the dual cotree of its non-tree edges.

    The reference backend rebuilds both trees whenever the embedding's
    version moves on; every primitive is an explicit traversal.
    TODO: give the "balanced" tag its own top-tree backend; for now it
    shares the reference traversals.
    """

    def __init__(self, graph: EmbeddedGraph, backend: str = "reference"):
        self.graph = graph
        self.backend = backend
        self._built_version: Optional[int] = None
        self._primal = _Forest()
        self._dual = _Forest()
        self._tree_edges: set = set()

    # ------------------------------------------------------------------ maintenance

    def _ensure(self) -> None:
        if self._built_version == self.graph.version:
            return
        self._build()
        self._built_version = self.graph.version

    def _build(self) -> None:
        g = self.graph
        primal, tree_edges = _Forest(), set()
        for start in range(g.n):
            if start in primal.depth:
                continue
            primal.add(start, None, None)
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for d in g.darts_at(x):
                    y = g.head(d)
                    if y not in primal.depth:
                        primal.add(y, x, d >> 1)
                        tree_edges.add(d >> 1)
                        queue.append(y)

        adjacency: Dict[int, List[Tuple[int, int]]] = {f: [] for f in g.face_ids()}
        for e in g.edges():
            if e in tree_edges:
                continue
            fa, fb = g.edge_faces(e)
            adjacency[fa].append((fb, e))
            adjacency[fb].append((fa, e))
        dual = _Forest()
        for start in g.face_ids():
            if start in dual.depth:
                continue
            dual.add(start, None, None)
            queue = deque([start])
            while queue:
                f = queue.popleft()
                for h, e in adjacency[f]:
                    if h not in dual.depth:
                        dual.add(h, f, e)
                        queue.append(h)
        self._primal, self._dual, self._tree_edges = primal, dual, tree_edges
        logger.debug("rebuilt tree-cotree index: %d tree edges, %d faces", len(tree_edges), g.num_faces)

    def _forest(self, tree: TreeKind) -> _Forest:
        self._ensure()
        return self._primal if tree == "primal" else self._dual

    # ------------------------------------------------------------------ queries

    def is_tree_edge(self, e: EdgeId) -> bool:
        self._ensure()
        return e in self._tree_edges

    def tree_edges(self) -> List[EdgeId]:
        self._ensure()
        return sorted(self._tree_edges)

    def cotree_edges(self) -> List[EdgeId]:
        self._ensure()
        return [e for e in self.graph.edges() if e not in self._tree_edges]

    def linkable(self, u: VertexId, v: VertexId) -> Optional[Tuple[Corner, Corner]]:
        """Corners of u and v on a common face, or None.

        Each face around u is tried as a mark on the primal path u..v; v is an
        endpoint, so the last node carries every corner of v.
        """
        if u == v:
            raise SameNode(f"linkable needs two distinct vertices, got {u} twice")
        if not self.graph.same_component(u, v):
            raise DifferentComponents(f"{u} and {v} are in different components")
        tried = set()
        for c_u in self.graph.corners_at(u):
            f = self.graph.face_of_corner(c_u)
            if f in tried:
                continue
            tried.add(f)
            hit = self.mark_and_search("primal", u, v, marks=[f], goal="last")
            if hit is not None and hit.node == v:
                return c_u, hit.left or hit.right
        return None

    def tree_path(self, tree: TreeKind, a: int, b: int) -> Tuple[List[int], List[EdgeId]]:
        forest = self._forest(tree)
        if not forest.same_tree(a, b):
            raise DifferentComponents(f"{a} and {b} are in different trees")
        return forest.path(a, b)

    def path_end_edge(self, tree: TreeKind, a: int, b: int, end: Literal["first", "last"] = "first") -> EdgeId:
        if a == b:
            raise SameNode(f"empty tree path at {a}")
        _, edges = self.tree_path(tree, a, b)
        return edges[0] if end == "first" else edges[-1]

    def meet(self, tree: TreeKind, x: int, y: int, z: int) -> int:
        forest = self._forest(tree)
        if not forest.same_tree(x, y, z):
            raise DifferentComponents("meet of nodes from different trees")
        return forest.meet(x, y, z)

    def fundamental_cycle(self, e: EdgeId) -> CycleHandle:
        if self.is_tree_edge(e):
            raise TreeEdge(f"edge {e} is a tree edge")
        y, z = self.graph.endpoints(e)
        nodes, edges = self.tree_path("primal", y, z)
        return CycleHandle(edge=e, vertices=tuple(nodes), edges=tuple(edges) + (e,))

    def projection(self, cycle: CycleHandle, w: VertexId) -> VertexId:
        y, z = self.graph.endpoints(cycle.edge)
        return self.meet("primal", w, y, z)

    def cycle_edges_at(self, cycle: CycleHandle, w: VertexId) -> Tuple[EdgeId, EdgeId]:
        try:
            i = cycle.vertices.index(w)
        except ValueError:
            raise NotOnCycle(f"vertex {w} is not on the cycle closed by edge {cycle.edge}") from None
        return cycle.edges[i - 1], cycle.edges[i]

    def cycle_neighbors(self, cycle: CycleHandle, w: VertexId) -> Tuple[VertexId, VertexId]:
        try:
            i = cycle.vertices.index(w)
        except ValueError:
            raise NotOnCycle(f"vertex {w} is not on the cycle closed by edge {cycle.edge}") from None
        k = len(cycle.vertices)
        return cycle.vertices[i - 1], cycle.vertices[(i + 1) % k]

    def cycle_walk(self, cycle: CycleHandle, start: VertexId, toward: VertexId) -> List[VertexId]:
        """Cycle vertices starting at `start` and continuing through its neighbour `toward`."""
        k = len(cycle.vertices)
        i = cycle.vertices.index(start)
        step = 1 if cycle.vertices[(i + 1) % k] == toward else -1
        return [cycle.vertices[(i + step * j) % k] for j in range(k)]

    def side_of(self, cycle: CycleHandle, f: FaceId) -> bool:
        """Which region of the cycle face f lies in (components of T* minus the closing edge)."""
        forest = self._forest("dual")
        fa, fb = self.graph.edge_faces(cycle.edge)
        child = fa if forest.parent_edge.get(fa) == cycle.edge else fb
        return forest.is_ancestor(child, f)

    def same_side(self, cycle: CycleHandle, f1: FaceId, f2: FaceId) -> bool:
        return self.side_of(cycle, f1) == self.side_of(cycle, f2)

    def face_of_edge_on_side(self, e: EdgeId, cycles: Sequence[CycleHandle], ref: FaceId) -> Optional[FaceId]:
        """The face of e lying on the same side of every cycle as `ref`."""
        for f in dict.fromkeys(self.graph.edge_faces(e)):
            if all(self.same_side(c, f, ref) for c in cycles):
                return f
        return None

    def face_of_edge_opposite(self, e: EdgeId, cycle: CycleHandle, ref: FaceId) -> Optional[FaceId]:
        for f in dict.fromkeys(self.graph.edge_faces(e)):
            if not self.same_side(cycle, f, ref):
                return f
        return None

    # ------------------------------------------------------------------ mark and search

    def _vertex_sides(self, nodes: List[VertexId], edges: List[EdgeId], i: int) -> Tuple[List[Corner], List[Corner]]:
        g = self.graph
        w = nodes[i]
        corners = g.corners_at(w)
        if i == 0 or i == len(nodes) - 1:
            return corners, corners
        d_back = g.dart_from(edges[i - 1], w)
        d_out = g.dart_from(edges[i], w)
        left, right = [], []
        d = g.rot_next(d_out)
        bucket = left
        while True:
            bucket.append(Corner(w, d))
            if d == d_back:
                bucket = right
            if d == d_out:
                break
            d = g.rot_next(d)
        return left, right

    def _face_sides(self, nodes: List[FaceId], edges: List[EdgeId], i: int) -> Tuple[List[Corner], List[Corner]]:
        g = self.graph
        f = nodes[i]
        corners = g.face_corners(f)
        if i == 0 or i == len(nodes) - 1:
            return corners, corners
        orbit = [c.dart for c in corners]
        on_f = lambda e: next(d for d in (2 * e, 2 * e + 1) if g.face_of(d) == f)
        i_in = orbit.index(on_f(edges[i - 1]))
        i_out = orbit.index(on_f(edges[i]))
        k = len(orbit)
        left, right = [], []
        j = (i_in + 1) % k
        bucket = left
        while True:
            bucket.append(corners[j])
            if j == i_out:
                bucket = right
            if j == i_in:
                break
            j = (j + 1) % k
        return left, right

    def mark_and_search(
        self,
        tree: TreeKind,
        a: int,
        b: int,
        marks: Sequence[int] = (),
        goal: Literal["first", "last"] = "first",
        side: Side = "any",
    ) -> Optional[SearchHit]:
        """First/last node on the tree path a..b incident to every mark.

        On a primal path the marks are faces; on a dual path they are vertices.
        `side` restricts the incidence to corners left or right of the path
        ("both" needs a matching corner on each side). The hit carries the first
        matching corner on each side for the first mark.
        """
        if len(marks) > 3:
            raise ValueError("at most three marks are supported")
        nodes, edges = self.tree_path(tree, a, b) if a != b else ([a], [])
        order = range(len(nodes)) if goal == "first" else range(len(nodes) - 1, -1, -1)
        g = self.graph
        for i in order:
            if tree == "primal":
                left, right = self._vertex_sides(nodes, edges, i)
                hits = lambda cs, m: [c for c in cs if g.face_of_corner(c) == m]
            else:
                left, right = self._face_sides(nodes, edges, i)
                hits = lambda cs, m: [c for c in cs if c.vertex == m]
            if not marks:
                return SearchHit(nodes[i])
            ok = True
            for m in marks:
                on_left, on_right = hits(left, m), hits(right, m)
                if side == "left":
                    ok = bool(on_left)
                elif side == "right":
                    ok = bool(on_right)
                elif side == "both":
                    ok = bool(on_left) and bool(on_right)
                else:
                    ok = bool(on_left) or bool(on_right)
                if not ok:
                    break
            if ok:
                first_left, first_right = hits(left, marks[0]), hits(right, marks[0])
                return SearchHit(
                    nodes[i],
                    first_left[0] if first_left else None,
                    first_right[0] if first_right else None,
                )
        return None

    # ------------------------------------------------------------------ checks and dumps

    def check_duality(self) -> ValidationReport:
        """Recompute both trees from scratch and compare against the maintained ones."""
        report = ValidationReport()
        self._ensure()
        g = self.graph
        maintained = set(self._tree_edges)
        for root, vertices in g.components().items():
            comp_edges = g.component_edges(root)
            faces = {g.face_of_corner(c) for w in vertices for c in g.corners_at(w)}
            in_tree = [e for e in comp_edges if e in maintained]
            if len(in_tree) != len(vertices) - 1:
                report.add(f"primal tree of component {root} has {len(in_tree)} edges for {len(vertices)} vertices")
            if len(comp_edges) - len(in_tree) != len(faces) - 1:
                report.add(f"cotree of component {root} does not span its {len(faces)} faces")
        fresh = TreeCotreeIndex(g, self.backend)
        if fresh.tree_edges() != self.tree_edges():
            report.add("maintained primal tree differs from a fresh rebuild")
        for f in g.face_ids():
            if self._dual.root.get(f) is None:
                report.add(f"face {f} missing from the dual tree")
        return report

    def dump_edges(self) -> str:
        """T and T* as edge lists, one per line."""
        self._ensure()
        g = self.graph
        lines = []
        for e in self.tree_edges():
            u, v = g.endpoints(e)
            lines.append(f"T {e} {u} {v}")
        for e in self.cotree_edges():
            fa, fb = g.edge_faces(e)
            lines.append(f"T* {e} {fa} {fb}")
        return "\n".join(lines) + "\n"
