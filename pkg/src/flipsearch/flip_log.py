from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional

from src.embedding.types import FlipDescriptor

FlipKind = Literal["articulation", "SR", "P"]


@dataclass
class FlipRecord:
    kind: FlipKind
    descriptor: FlipDescriptor
    u: int
    v: int
    critical: bool
    clean: bool = True
    # articulation flips only: "reflect" or "slide"
    subkind: Optional[str] = None
    size: int = 0
    op_index: int = -1

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "subkind": self.subkind,
            "clean": self.clean,
            "critical": self.critical,
            "u": self.u,
            "v": self.v,
            "size": self.size,
            "op": self.op_index,
        }


@dataclass
class FlipLog:
    """Machine-readable sequence of executed flips with per-kind counters."""

    records: List[FlipRecord] = field(default_factory=list)
    totals: Dict[str, int] = field(default_factory=lambda: {"articulation": 0, "SR": 0, "P": 0})
    op_index: int = 0
    op_start: int = 0
    keep_records: bool = True

    def begin_op(self) -> None:
        self.op_index += 1
        self.op_start = self.total

    @property
    def total(self) -> int:
        return sum(self.totals.values())

    @property
    def flips_this_op(self) -> int:
        return self.total - self.op_start

    def add(self, record: FlipRecord) -> None:
        record.op_index = self.op_index
        self.totals[record.kind] += 1
        if self.keep_records:
            self.records.append(record)

    def non_critical(self) -> List[FlipRecord]:
        return [r for r in self.records if not r.critical]

    def dirty(self) -> List[FlipRecord]:
        return [r for r in self.records if not r.clean]
