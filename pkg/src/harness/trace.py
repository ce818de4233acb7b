"""Trace files: parsing and replay against the general dynamic structure.

A trace is line oriented text. The first non-comment line is `n <count>`;
every other line is one operation:

    I u v    insert              -> accepted | rejected
    D u v    delete              -> deleted
    Q u v    compatibility query -> yes | no
    P        global planar bit   -> true | false
    C v      component bit       -> true | false
    N u v    embedding neighbours of edge (u,v) -> four darts, or `absent`
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from src.dynamic.general import GeneralDynamicGraph
from src.embedding.rotation_io import dart_name
from src.oracle.static import EdgeListGraph, is_planar_static
from src.utils.config import Settings, load_settings
from src.utils.errors import DynamicGraphError, EmbeddingError, ParseError
from src.utils.parsing import parse_header, parse_vertex, strip_line

logger = logging.getLogger(__name__)

# op code -> number of vertex arguments
OP_ARITY: Dict[str, int] = {"I": 2, "D": 2, "Q": 2, "P": 0, "C": 1, "N": 2}


@dataclass(frozen=True)
class TraceOp:
    code: str
    args: Tuple[int, ...]
    line_no: int = 0

    def __str__(self) -> str:
        return " ".join([self.code, *map(str, self.args)])


class RunStats(BaseModel):
    n: int = 0
    ops: int = 0
    inserts: int = 0
    rejects: int = 0
    deletes: int = 0
    flips_total: int = 0
    flips_art: int = 0
    flips_sr: int = 0
    flips_p: int = 0
    flips_per_insert: float = 0.0
    mismatches: int = 0
    wall_ms: float = 0.0
    # re-insertions of deferred edges after a delete; the delete itself never flips
    drain_flips: int = 0
    violations: int = Field(default=0, ge=0)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0 and self.violations == 0


def parse_trace(text: str) -> Dict:
    """Parse trace text into {"n": count, "ops": [TraceOp, ...]}.

    An empty text is an empty trace over zero vertices.
    """
    n: Optional[int] = None
    ops: List[TraceOp] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = strip_line(raw)
        if not line:
            continue
        tokens = line.split()
        try:
            if n is None:
                n = parse_header(tokens, line_no)
                continue
            code = tokens[0].upper()
            if code not in OP_ARITY:
                raise ParseError(line_no, f"unknown operation {tokens[0]!r}")
            if len(tokens) - 1 != OP_ARITY[code]:
                raise ParseError(line_no, f"{code} takes {OP_ARITY[code]} vertex argument(s), got {len(tokens) - 1}")
            args = tuple(parse_vertex(t, n, line_no) for t in tokens[1:])
            if len(args) == 2 and args[0] == args[1]:
                raise ParseError(line_no, f"self-loop at vertex {args[0]}")
        except ParseError as e:
            if e.line is None:
                e.line = raw
            raise
        ops.append(TraceOp(code, args, line_no))
    return {"n": n or 0, "ops": ops}


def read_trace(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as f:
        return parse_trace(f.read())


def format_trace(n: int, ops: List[TraceOp]) -> str:
    return "\n".join([f"n {n}", *map(str, ops)]) + "\n"


class _OracleCheck:
    """Static recomputation of every planarity bit from the full edge set."""

    def __init__(self, gd: GeneralDynamicGraph):
        self.gd = gd
        self.problems: List[str] = []

    def _mismatch(self, op: TraceOp, what: str, got, want) -> None:
        msg = f"line {op.line_no} ({op}): {what} is {got}, oracle says {want}"
        logger.warning(msg)
        self.problems.append(msg)

    def query(self, op: TraceOp, answer: bool) -> None:
        """Q answers for the components of u and v only; other components may be nonplanar."""
        u, v = op.args
        G = nx.Graph()
        G.add_nodes_from(range(self.gd.n))
        G.add_edges_from(self.gd.edges())
        near = nx.node_connected_component(G, u) | nx.node_connected_component(G, v)
        H = G.subgraph(near).copy()
        H.add_edge(u, v)
        want = nx.check_planarity(H)[0]
        if answer != want:
            self._mismatch(op, f"Q {u} {v}", answer, want)

    def bits(self, op: TraceOp) -> None:
        edges = self.gd.edges()
        G = nx.Graph()
        G.add_nodes_from(range(self.gd.n))
        G.add_edges_from(edges)
        want_global = is_planar_static(EdgeListGraph(self.gd.n, edges), cross_check_limit=0)
        if self.gd.is_planar() != want_global:
            self._mismatch(op, "is_planar", self.gd.is_planar(), want_global)
        for comp in nx.connected_components(G):
            if len(comp) < 5:
                want = True
            else:
                want = nx.check_planarity(G.subgraph(comp))[0]
            for w in sorted(comp):
                if self.gd.component_planar(w) != want:
                    self._mismatch(op, f"component_planar({w})", not want, want)
                    break


def _execute(gd: GeneralDynamicGraph, op: TraceOp, stats: RunStats, oracle: Optional[_OracleCheck]) -> str:
    code, args = op.code, op.args
    if code == "I":
        stats.inserts += 1
        if gd.insert(*args):
            return "accepted"
        stats.rejects += 1
        return "rejected"
    if code == "D":
        before = gd.planar.flips_total
        gd.delete(*args)
        stats.deletes += 1
        stats.drain_flips += gd.planar.flips_total - before
        return "deleted"
    if code == "Q":
        answer = gd.query_compatible(*args)
        if oracle is not None:
            oracle.query(op, answer)
        return "yes" if answer else "no"
    if code == "P":
        return str(gd.is_planar()).lower()
    if code == "C":
        return str(gd.component_planar(args[0])).lower()
    darts = gd.embedding_neighbors(*args)
    if darts is None:
        return "absent"
    return " ".join(dart_name(gd.planar.graph, d) for d in darts)


def run_trace(
    trace: Dict,
    check_oracle: bool = False,
    validate_every: bool = False,
    backend: Optional[str] = None,
    settings: Optional[Settings] = None,
) -> Dict:
    """Replay a parsed trace. Returns {"stats": RunStats dict, "outputs": [...], "problems": [...]}.

    Operations the structure refuses (a duplicate insert, deleting a missing
    edge) raise ParseError carrying the offending line number. Search failures
    such as FlipBudgetExceeded propagate unchanged.
    """
    settings = settings or load_settings(backend=backend)
    n = trace.get("n", 0)
    gd = GeneralDynamicGraph(n, settings)
    gd.planar.log.keep_records = False
    stats = RunStats(n=n)
    oracle = _OracleCheck(gd) if check_oracle else None
    outputs: List[str] = []
    problems: List[str] = []

    start = time.perf_counter()
    for op in trace.get("ops", []):
        try:
            outputs.append(_execute(gd, op, stats, oracle))
        except (DynamicGraphError, EmbeddingError) as e:
            raise ParseError(op.line_no, str(e), str(op)) from e
        stats.ops += 1
        if oracle is not None:
            oracle.bits(op)
        if validate_every:
            report = gd.planar.validate()
            if not report.ok:
                stats.violations += len(report.violations)
                problems.extend(f"line {op.line_no} ({op}): {v}" for v in report.violations)
    stats.wall_ms = (time.perf_counter() - start) * 1000.0

    totals = gd.planar.log.totals
    stats.flips_art = totals["articulation"]
    stats.flips_sr = totals["SR"]
    stats.flips_p = totals["P"]
    stats.flips_total = stats.flips_art + stats.flips_sr + stats.flips_p
    stats.flips_per_insert = stats.flips_total / stats.inserts if stats.inserts else 0.0
    if oracle is not None:
        stats.mismatches = len(oracle.problems)
        problems = oracle.problems + problems
    logger.info("trace done: %d ops, %d flips, %d mismatches", stats.ops, stats.flips_total, stats.mismatches)
    return {"stats": stats.model_dump(), "outputs": outputs, "problems": problems}
