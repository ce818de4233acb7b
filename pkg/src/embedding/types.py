from dataclasses import dataclass, field
from typing import FrozenSet, List, NamedTuple, Optional, Tuple, Union

VertexId = int
EdgeId = int
DartId = int
FaceId = int


class Corner(NamedTuple):
    """Angular wedge at `vertex` between rot_prev(dart) and dart.

    An isolated vertex has a single null corner with dart=None.
    """

    vertex: VertexId
    dart: Optional[DartId]

    @property
    def is_null(self) -> bool:
        return self.dart is None


@dataclass(frozen=True)
class ArticulationFlip:
    seg_start: Corner
    seg_end: Corner
    target: Corner
    reflect: bool = False

    @property
    def vertex(self) -> VertexId:
        return self.seg_start.vertex


@dataclass(frozen=True)
class SeparationFlip:
    # (c_x^u, c_y^u, c_y^v, c_x^v)
    sigma: Tuple[Corner, Corner, Corner, Corner]

    @property
    def pair(self) -> Tuple[VertexId, VertexId]:
        return self.sigma[0].vertex, self.sigma[1].vertex


FlipDescriptor = Union[ArticulationFlip, SeparationFlip]


@dataclass
class SeparationPlan:
    """The swept side of a separation flip, computed without mutating anything."""

    s: VertexId
    t: VertexId
    arc_s: List[DartId]
    arc_t: List[DartId]
    t_arc_from_v: bool
    vertices: FrozenSet[VertexId]
    edges: FrozenSet[EdgeId]
    classes_inside: int
    classes_outside: int
    # reversed arcs begin and end inside the block of {s,t}
    clean: bool = True

    @property
    def size(self) -> int:
        return len(self.edges) + len(self.vertices) + 2


@dataclass
class ArticulationPlan:
    a: VertexId
    segment: List[DartId]
    vertices: FrozenSet[VertexId]
    edges: FrozenSet[EdgeId]


@dataclass
class ValidationReport:
    ok: bool = True
    violations: List[str] = field(default_factory=list)

    def add(self, message: str) -> None:
        self.ok = False
        self.violations.append(message)

    def __bool__(self) -> bool:
        return self.ok
