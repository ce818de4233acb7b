import heapq
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.embedding.types import (
    ArticulationFlip,
    ArticulationPlan,
    Corner,
    DartId,
    EdgeId,
    FaceId,
    SeparationFlip,
    SeparationPlan,
    ValidationReport,
    VertexId,
)
from src.utils.errors import (
    EmbeddingError,
    InvalidCorner,
    InvalidSegment,
    InvalidTarget,
    NonContiguousCut,
    NotAFourCycle,
    SameFaceViolation,
    SelfLoop,
    UnknownEdge,
)

logger = logging.getLogger(__name__)

FREE = -1


class EmbeddedGraph:
    """Rotation-system embedding of a multigraph on the sphere.

    Edge e owns darts 2e and 2e+1. Faces are the orbits of
    phi(d) = rot_next(twin(d)); the face of a corner is the orbit of its dart.
    """

    def __init__(self, n: int = 0):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self._n = n
        self._origin: List[int] = []
        self._twin: List[int] = []
        self._rot_next: List[int] = []
        self._rot_prev: List[int] = []
        self._vertex_dart: List[Optional[int]] = [None] * n
        self._degree: List[int] = [0] * n
        self._free_edges: List[int] = []
        self._num_edges = 0
        self._version = 0
        self._face_cache: Optional[tuple] = None
        self._comp_cache: Optional[tuple] = None
        self._class_cache: Dict[tuple, tuple] = {}

    @classmethod
    def from_rotations(
        cls,
        n: int,
        edges: Sequence[Optional[Tuple[int, int]]],
        rotations: Sequence[Sequence[int]],
    ) -> "EmbeddedGraph":
        """Build from an edge list and per-vertex dart orders (dart 2i leaves edges[i][0]).

        A None entry in `edges` leaves that edge id free for reuse.
        """
        g = cls(n)
        m = len(edges)
        g._origin = [FREE] * (2 * m)
        g._twin = [d ^ 1 for d in range(2 * m)]
        g._rot_next = [FREE] * (2 * m)
        g._rot_prev = [FREE] * (2 * m)
        for e, pair in enumerate(edges):
            if pair is None:
                heapq.heappush(g._free_edges, e)
                continue
            u, v = pair
            if u == v:
                raise SelfLoop(f"edge {e} is a self-loop at {u}")
            g._origin[2 * e] = u
            g._origin[2 * e + 1] = v
            g._num_edges += 1
        for v in range(n):
            order = list(rotations[v]) if v < len(rotations) else []
            for d in order:
                if not (0 <= d < 2 * m) or g._origin[d] != v:
                    raise EmbeddingError(f"dart {d} does not leave vertex {v}")
            g._degree[v] = len(order)
            g._vertex_dart[v] = order[0] if order else None
            for i, d in enumerate(order):
                g._link(d, order[(i + 1) % len(order)])
        if any(x == FREE for d, x in enumerate(g._rot_next) if g._origin[d] != FREE):
            raise EmbeddingError("some darts are missing from the rotation lists")
        return g

    def copy(self) -> "EmbeddedGraph":
        g = EmbeddedGraph(self._n)
        g._origin = list(self._origin)
        g._twin = list(self._twin)
        g._rot_next = list(self._rot_next)
        g._rot_prev = list(self._rot_prev)
        g._vertex_dart = list(self._vertex_dart)
        g._degree = list(self._degree)
        g._free_edges = list(self._free_edges)
        g._num_edges = self._num_edges
        return g

    # ------------------------------------------------------------------ basics

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return self._num_edges

    @property
    def version(self) -> int:
        return self._version

    def _touch(self) -> None:
        self._version += 1
        self._face_cache = None
        self._comp_cache = None
        self._class_cache = {}

    def has_edge(self, e: EdgeId) -> bool:
        return 0 <= 2 * e < len(self._origin) and self._origin[2 * e] != FREE

    def edges(self) -> List[EdgeId]:
        return [e for e in range(len(self._origin) // 2) if self._origin[2 * e] != FREE]

    def endpoints(self, e: EdgeId) -> Tuple[VertexId, VertexId]:
        if not self.has_edge(e):
            raise UnknownEdge(f"edge {e} does not exist")
        return self._origin[2 * e], self._origin[2 * e + 1]

    @staticmethod
    def edge_of(d: DartId) -> EdgeId:
        return d >> 1

    def is_live(self, d: Optional[DartId]) -> bool:
        return d is not None and 0 <= d < len(self._origin) and self._origin[d] != FREE

    def twin(self, d: DartId) -> DartId:
        return self._twin[d]

    def origin(self, d: DartId) -> VertexId:
        return self._origin[d]

    def head(self, d: DartId) -> VertexId:
        return self._origin[self._twin[d]]

    def rot_next(self, d: DartId) -> DartId:
        return self._rot_next[d]

    def rot_prev(self, d: DartId) -> DartId:
        return self._rot_prev[d]

    def degree(self, v: VertexId) -> int:
        return self._degree[v]

    def darts_at(self, v: VertexId) -> List[DartId]:
        """Darts leaving v in counterclockwise order."""
        start = self._vertex_dart[v]
        if start is None:
            return []
        out = [start]
        d = self._rot_next[start]
        while d != start and len(out) <= self._degree[v]:
            out.append(d)
            d = self._rot_next[d]
        return out

    def corner(self, d: DartId) -> Corner:
        return Corner(self._origin[d], d)

    def corners_at(self, v: VertexId) -> List[Corner]:
        if self._degree[v] == 0:
            return [Corner(v, None)]
        return [Corner(v, d) for d in self.darts_at(v)]

    def neighbors(self, v: VertexId) -> List[VertexId]:
        return [self.head(d) for d in self.darts_at(v)]

    def find_edge(self, u: VertexId, v: VertexId) -> Optional[EdgeId]:
        if self._degree[v] < self._degree[u]:
            u, v = v, u
        for d in self.darts_at(u):
            if self.head(d) == v:
                return d >> 1
        return None

    def dart_from(self, e: EdgeId, u: VertexId) -> DartId:
        """The dart of edge e leaving u."""
        if self._origin[2 * e] == u:
            return 2 * e
        if self._origin[2 * e + 1] == u:
            return 2 * e + 1
        raise UnknownEdge(f"edge {e} is not incident to {u}")

    # ------------------------------------------------------------------ faces

    def _faces(self) -> tuple:
        if self._face_cache is not None:
            return self._face_cache
        face_of = [FREE] * len(self._origin)
        orbits: List[List[int]] = []
        for d in range(len(self._origin)):
            if self._origin[d] == FREE or face_of[d] != FREE:
                continue
            fid = len(orbits)
            orbit = []
            x = d
            while face_of[x] == FREE:
                face_of[x] = fid
                orbit.append(x)
                x = self._rot_next[self._twin[x]]
            orbits.append(orbit)
        isolated: Dict[int, int] = {}
        isolated_face: Dict[int, int] = {}
        for v in range(self._n):
            if self._degree[v] == 0:
                isolated[v] = len(orbits)
                isolated_face[len(orbits)] = v
                orbits.append([])
        self._face_cache = (face_of, orbits, isolated, isolated_face)
        return self._face_cache

    def face_of(self, d: DartId) -> FaceId:
        return self._faces()[0][d]

    def face_of_corner(self, c: Corner) -> FaceId:
        if c.dart is None:
            return self._faces()[2][c.vertex]
        return self._faces()[0][c.dart]

    @property
    def num_faces(self) -> int:
        return len(self._faces()[1])

    def face_ids(self) -> range:
        return range(self.num_faces)

    def face_darts(self, f: FaceId) -> List[DartId]:
        return list(self._faces()[1][f])

    def face_corners(self, f: FaceId) -> List[Corner]:
        face_of, orbits, _, isolated_face = self._faces()
        if f in isolated_face:
            return [Corner(isolated_face[f], None)]
        return [Corner(self._origin[d], d) for d in orbits[f]]

    def face_vertices(self, f: FaceId) -> Set[VertexId]:
        return {c.vertex for c in self.face_corners(f)}

    def face_walk(self, c: Corner) -> List[Corner]:
        """The corners of c's face in orbit order, starting at c."""
        if c.dart is None:
            return [c]
        out = []
        x = c.dart
        while True:
            out.append(Corner(self._origin[x], x))
            x = self._rot_next[self._twin[x]]
            if x == c.dart:
                return out

    def faces_at(self, v: VertexId) -> List[FaceId]:
        return [self.face_of_corner(c) for c in self.corners_at(v)]

    def corners_on_face(self, v: VertexId, f: FaceId) -> List[Corner]:
        return [c for c in self.corners_at(v) if self.face_of_corner(c) == f]

    def edge_faces(self, e: EdgeId) -> Tuple[FaceId, FaceId]:
        """Faces on the two sides of e: (face of dart 2e, face of dart 2e+1)."""
        return self.face_of(2 * e), self.face_of(2 * e + 1)

    def common_face(self, u: VertexId, v: VertexId) -> Optional[Tuple[Corner, Corner]]:
        """Naive scan for corners of u and v on a shared face."""
        by_face = {}
        for c in self.corners_at(u):
            by_face.setdefault(self.face_of_corner(c), c)
        for c in self.corners_at(v):
            f = self.face_of_corner(c)
            if f in by_face:
                return by_face[f], c
        return None

    # ------------------------------------------------------------------ components

    def _components(self) -> tuple:
        if self._comp_cache is not None:
            return self._comp_cache
        comp = list(range(self._n))

        def find(x: int) -> int:
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        for e in range(len(self._origin) // 2):
            if self._origin[2 * e] == FREE:
                continue
            a, b = find(self._origin[2 * e]), find(self._origin[2 * e + 1])
            if a != b:
                comp[max(a, b)] = min(a, b)
        label = [find(v) for v in range(self._n)]
        self._comp_cache = (label,)
        return self._comp_cache

    def component_of(self, v: VertexId) -> int:
        """Smallest vertex id of v's connected component."""
        return self._components()[0][v]

    def same_component(self, u: VertexId, v: VertexId) -> bool:
        label = self._components()[0]
        return label[u] == label[v]

    def component_vertices(self, v: VertexId) -> List[VertexId]:
        label = self._components()[0]
        root = label[v]
        return [w for w in range(self._n) if label[w] == root]

    def component_edges(self, v: VertexId) -> List[EdgeId]:
        label = self._components()[0]
        root = label[v]
        return [e for e in self.edges() if label[self._origin[2 * e]] == root]

    def components(self) -> Dict[int, List[VertexId]]:
        out: Dict[int, List[VertexId]] = {}
        for w, root in enumerate(self._components()[0]):
            out.setdefault(root, []).append(w)
        return out

    def components_without(self, removed: Iterable[VertexId]) -> Dict[VertexId, int]:
        """Connected components of the graph minus `removed`, as vertex -> label."""
        removed = set(removed)
        label: Dict[VertexId, int] = {}
        for start in range(self._n):
            if start in removed or start in label:
                continue
            label[start] = start
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for d in self.darts_at(x):
                    y = self.head(d)
                    if y not in removed and y not in label:
                        label[y] = start
                        queue.append(y)
        return label

    def dart_classes(self, centers: Sequence[VertexId]) -> Tuple[Dict[DartId, tuple], Dict[VertexId, int]]:
        """Separation classes of the darts at `centers`.

        A dart leading into the rest of the graph is labelled by the component of
        G - centers it enters; an edge between two centers is its own class.
        """
        key = tuple(sorted(centers))
        cached = self._class_cache.get(key)
        if cached is not None:
            return cached
        comp = self.components_without(centers)
        labels: Dict[DartId, tuple] = {}
        for c in centers:
            for d in self.darts_at(c):
                h = self.head(d)
                labels[d] = ("e", d >> 1) if h in centers else ("c", comp[h])
        self._class_cache[key] = (labels, comp)
        return labels, comp

    # ------------------------------------------------------------------ low-level mutation

    def _link(self, p: DartId, q: DartId) -> None:
        self._rot_next[p] = q
        self._rot_prev[q] = p

    def _alloc_edge(self) -> EdgeId:
        if self._free_edges:
            return heapq.heappop(self._free_edges)
        e = len(self._origin) // 2
        self._origin.extend([FREE, FREE])
        self._twin.extend([2 * e + 1, 2 * e])
        self._rot_next.extend([FREE, FREE])
        self._rot_prev.extend([FREE, FREE])
        return e

    def _splice_before(self, d: DartId, v: VertexId, before: Optional[DartId]) -> None:
        self._origin[d] = v
        if before is None:
            self._link(d, d)
            self._vertex_dart[v] = d
        else:
            self._link(self._rot_prev[before], d)
            self._link(d, before)
        self._degree[v] += 1

    def _unsplice(self, d: DartId) -> None:
        v = self._origin[d]
        nxt = self._rot_next[d]
        if nxt == d:
            self._vertex_dart[v] = None
        else:
            self._link(self._rot_prev[d], nxt)
            if self._vertex_dart[v] == d:
                self._vertex_dart[v] = nxt
        self._degree[v] -= 1
        self._origin[d] = FREE
        self._rot_next[d] = FREE
        self._rot_prev[d] = FREE

    def _reverse_vertex(self, w: VertexId) -> None:
        for d in self.darts_at(w):
            self._rot_next[d], self._rot_prev[d] = self._rot_prev[d], self._rot_next[d]

    def _reverse_segment(self, seg: List[DartId]) -> None:
        """Reverse a contiguous run of darts in place within its rotation."""
        if len(seg) < 2:
            return
        v = self._origin[seg[0]]
        rev = seg[::-1]
        if len(seg) == self._degree[v]:
            for i, d in enumerate(rev):
                self._link(d, rev[(i + 1) % len(rev)])
            return
        p = self._rot_prev[seg[0]]
        q = self._rot_next[seg[-1]]
        self._link(p, rev[0])
        for i in range(len(rev) - 1):
            self._link(rev[i], rev[i + 1])
        self._link(rev[-1], q)

    def _arc(self, start: DartId, stop: DartId) -> List[DartId]:
        """Darts from start (inclusive) counterclockwise up to stop (exclusive)."""
        out = []
        d = start
        limit = self._degree[self._origin[start]]
        while d != stop and len(out) < limit:
            out.append(d)
            d = self._rot_next[d]
        return out

    def _check_corner(self, c: Corner) -> None:
        if not (0 <= c.vertex < self._n):
            raise InvalidCorner(f"vertex {c.vertex} out of range")
        if c.dart is None:
            if self._degree[c.vertex] != 0:
                raise InvalidCorner(f"null corner given for non-isolated vertex {c.vertex}")
        elif not self.is_live(c.dart) or self._origin[c.dart] != c.vertex:
            raise InvalidCorner(f"dart {c.dart} does not leave vertex {c.vertex}")

    # ------------------------------------------------------------------ edge updates

    def insert_edge_at(self, c_u: Corner, c_v: Corner) -> EdgeId:
        """Embed a new edge between two corners of one face (or of two components)."""
        if c_u.vertex == c_v.vertex:
            raise SelfLoop(f"self-loop at vertex {c_u.vertex}")
        self._check_corner(c_u)
        self._check_corner(c_v)
        if self.same_component(c_u.vertex, c_v.vertex):
            if self.face_of_corner(c_u) != self.face_of_corner(c_v):
                raise SameFaceViolation(
                    f"corners of {c_u.vertex} and {c_v.vertex} are on different faces of one component"
                )
        e = self._alloc_edge()
        self._splice_before(2 * e, c_u.vertex, c_u.dart)
        self._splice_before(2 * e + 1, c_v.vertex, c_v.dart)
        self._num_edges += 1
        self._touch()
        return e

    def delete_edge(self, e: EdgeId) -> None:
        if not self.has_edge(e):
            raise UnknownEdge(f"edge {e} does not exist")
        self._unsplice(2 * e)
        self._unsplice(2 * e + 1)
        heapq.heappush(self._free_edges, e)
        self._num_edges -= 1
        self._touch()

    # ------------------------------------------------------------------ flips

    def plan_articulation(self, flip: ArticulationFlip) -> ArticulationPlan:
        a = flip.seg_start.vertex
        for c in (flip.seg_start, flip.seg_end):
            if c.dart is None or c.vertex != a or not self.is_live(c.dart) or self._origin[c.dart] != a:
                raise InvalidSegment(f"segment corner {c} is not a dart at vertex {a}")
        segment = [flip.seg_start.dart]
        while segment[-1] != flip.seg_end.dart:
            segment.append(self._rot_next[segment[-1]])
            if len(segment) > self._degree[a]:
                raise InvalidSegment("segment end not reachable from segment start")
        labels, comp = self.dart_classes((a,))
        inside = {labels[d] for d in segment}
        seg_set = set(segment)
        for d in self.darts_at(a):
            if d not in seg_set and labels[d] in inside:
                raise InvalidSegment(f"segment at {a} splits a separation class")
        whole = len(segment) == self._degree[a]
        t = flip.target
        if not whole:
            if t.dart is None or t.vertex != a or not self.is_live(t.dart) or self._origin[t.dart] != a:
                raise InvalidTarget(f"target {t} is not a corner at {a}")
            if t.dart in seg_set:
                raise InvalidTarget(f"target {t} lies inside the moved segment")
        roots = {lab[1] for lab in inside}
        vertices = frozenset(w for w, r in comp.items() if r in roots)
        edges = {d >> 1 for d in segment}
        for w in vertices:
            edges.update(d >> 1 for d in self.darts_at(w))
        return ArticulationPlan(a=a, segment=segment, vertices=vertices, edges=frozenset(edges))

    def articulation_flip(self, flip: ArticulationFlip) -> ArticulationFlip:
        """Move (and optionally mirror) a block of classes at an articulation point.

        Returns the flip that undoes this one.
        """
        plan = self.plan_articulation(flip)
        a, seg = plan.a, plan.segment
        if len(seg) == self._degree[a]:
            if flip.reflect:
                self._reverse_segment(seg)
                for w in plan.vertices:
                    self._reverse_vertex(w)
                seg = seg[::-1]
            self._touch()
            return ArticulationFlip(Corner(a, seg[0]), Corner(a, seg[-1]), Corner(a, seg[0]), flip.reflect)

        orig_next = self._rot_next[seg[-1]]
        self._link(self._rot_prev[seg[0]], orig_next)
        if flip.reflect:
            seg = seg[::-1]
            for w in plan.vertices:
                self._reverse_vertex(w)
        target = flip.target.dart
        self._link(self._rot_prev[target], seg[0])
        for i in range(len(seg) - 1):
            self._link(seg[i], seg[i + 1])
        self._link(seg[-1], target)
        self._touch()
        logger.debug("articulation flip at %d: %d darts, reflect=%s", a, len(seg), flip.reflect)
        return ArticulationFlip(Corner(a, seg[0]), Corner(a, seg[-1]), Corner(a, orig_next), flip.reflect)

    def plan_separation(self, flip: SeparationFlip) -> SeparationPlan:
        """Work out the side swept counterclockwise at s from c_x^u to c_x^v."""
        cxu, cyu, cyv, cxv = flip.sigma
        for c in flip.sigma:
            if c.dart is None:
                raise NotAFourCycle("separation corners must not be null corners")
            self._check_corner(c)
        s, t = cxu.vertex, cyu.vertex
        if cxv.vertex != s or cyv.vertex != t or s == t:
            raise NotAFourCycle("corners do not lie on exactly two vertices in the 4-cycle pattern")
        if self.face_of(cxu.dart) != self.face_of(cyu.dart) or self.face_of(cxv.dart) != self.face_of(cyv.dart):
            raise NotAFourCycle("corners do not share the two faces pairwise")

        arc_s = self._arc(cxu.dart, cxv.dart)
        if not arc_s:
            raise NonContiguousCut(f"empty arc at {s}")
        labels, comp = self.dart_classes((s, t))
        inside = {labels[d] for d in arc_s}
        arc_s_set = set(arc_s)
        at_s = self.darts_at(s)
        for d in at_s:
            if d not in arc_s_set and labels[d] in inside:
                raise NonContiguousCut(f"a separation class straddles the cut at {s}")
        s_labels = {labels[d] for d in at_s}

        at_t = self.darts_at(t)
        arc_t: Optional[List[DartId]] = None
        from_v = True
        for from_v, (start, stop) in ((True, (cyv.dart, cyu.dart)), (False, (cyu.dart, cyv.dart))):
            cand = self._arc(start, stop)
            if not cand:
                continue
            cand_set = set(cand)
            t_only_in: Set[tuple] = set()
            t_only_out: Set[tuple] = set()
            ok = True
            for d in at_t:
                lab = labels[d]
                if lab in s_labels:
                    if (d in cand_set) != (lab in inside):
                        ok = False
                        break
                elif d in cand_set:
                    t_only_in.add(lab)
                else:
                    t_only_out.add(lab)
            if ok and not (t_only_in & t_only_out):
                arc_t = cand
                break
        if arc_t is None:
            raise NonContiguousCut(f"the cut at {t} does not match the cut at {s}")

        inside_all = inside | {labels[d] for d in arc_t}
        all_labels = set(labels.values())
        shared = {lab for lab in all_labels if lab[0] == "e"} | {
            labels[d] for d in at_s if labels[d] in {labels[x] for x in at_t}
        }
        if not (inside_all & shared) or not ((all_labels - inside_all) & shared):
            raise NonContiguousCut(f"{{{s},{t}}} does not separate along these corners")

        roots = {lab[1] for lab in inside_all if lab[0] == "c"}
        vertices = frozenset(w for w, r in comp.items() if r in roots)
        edges = {d >> 1 for d in arc_s} | {d >> 1 for d in arc_t}
        for w in vertices:
            edges.update(d >> 1 for d in self.darts_at(w))
        return SeparationPlan(
            s=s,
            t=t,
            arc_s=arc_s,
            arc_t=arc_t,
            t_arc_from_v=from_v,
            vertices=vertices,
            edges=frozenset(edges),
            classes_inside=len(inside_all & shared),
            classes_outside=len((all_labels - inside_all) & shared),
            clean=all(labels[d] in shared for d in (arc_s[0], arc_s[-1], arc_t[0], arc_t[-1])),
        )

    def separation_flip(self, flip: SeparationFlip) -> SeparationFlip:
        """Reflect one side of a separation pair. Returns the flip that undoes it."""
        plan = self.plan_separation(flip)
        self._reverse_segment(plan.arc_s)
        self._reverse_segment(plan.arc_t)
        for w in plan.vertices:
            self._reverse_vertex(w)
        self._touch()
        cxu, cyu, cyv, cxv = flip.sigma
        s, t = plan.s, plan.t
        new_cxu = Corner(s, plan.arc_s[-1])
        if plan.t_arc_from_v:
            new_cyu, new_cyv = cyu, Corner(t, plan.arc_t[-1])
        else:
            new_cyu, new_cyv = Corner(t, plan.arc_t[-1]), cyv
        logger.debug("separation flip at {%d,%d}: %d vertices reflected", s, t, len(plan.vertices))
        return SeparationFlip((new_cxu, new_cyu, new_cyv, cxv))

    # ------------------------------------------------------------------ checks

    def rotation_key(self) -> Tuple[Tuple[int, ...], ...]:
        """Canonical form of the rotation system (each cycle starts at its smallest dart)."""
        key = []
        for v in range(self._n):
            darts = self.darts_at(v)
            if darts:
                i = darts.index(min(darts))
                darts = darts[i:] + darts[:i]
            key.append(tuple(darts))
        return tuple(key)

    def validate(self) -> ValidationReport:
        """Check twin, rotation and per-component Euler invariants. Never raises."""
        report = ValidationReport()
        size = len(self._origin)
        live = [d for d in range(size) if self._origin[d] != FREE]

        def valid(x: int) -> bool:
            return 0 <= x < size and self._origin[x] != FREE

        for d in live:
            t = self._twin[d]
            if t == d:
                report.add(f"twin not involution: dart {d} is its own twin")
            elif not valid(t) or self._twin[t] != d:
                report.add(f"twin not involution at dart {d}")
            elif self._origin[t] == self._origin[d]:
                report.add(f"self-loop at dart {d}")
        for d in live:
            nx = self._rot_next[d]
            if not valid(nx) or self._rot_prev[nx] != d:
                report.add(f"rot_next/rot_prev not inverse at dart {d}")
            elif self._origin[nx] != self._origin[d]:
                report.add(f"rot_next of dart {d} leaves its vertex")
        if not report.ok:
            return report

        per_vertex = [0] * self._n
        for d in live:
            per_vertex[self._origin[d]] += 1
        for v in range(self._n):
            if per_vertex[v] != self._degree[v]:
                report.add(f"degree of vertex {v} is stale")
            if self._degree[v] == 0:
                if self._vertex_dart[v] is not None:
                    report.add(f"isolated vertex {v} has a rotation")
                continue
            if len(self.darts_at(v)) != per_vertex[v]:
                report.add(f"rotation at vertex {v} is not a single cycle")
        if not report.ok:
            return report

        label = self._components()[0]
        counts: Dict[int, List[int]] = {}
        for v in range(self._n):
            counts.setdefault(label[v], [0, 0, 0])[0] += 1
        for e in self.edges():
            counts[label[self._origin[2 * e]]][1] += 1
        face_of, orbits, isolated, _ = self._faces()
        for f, orbit in enumerate(orbits):
            root = label[self._origin[orbit[0]]] if orbit else None
            if root is not None:
                counts[root][2] += 1
        for v, f in isolated.items():
            counts[label[v]][2] += 1
        for root, (nv, ne, nf) in sorted(counts.items()):
            if nv - ne + nf != 2:
                report.add(f"Euler violation in component of vertex {root}: V-E+F = {nv - ne + nf}")
        return report
