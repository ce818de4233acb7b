"""Amortized flip counts of planar-growth workloads over a range of n."""
import logging
import math
import statistics
from typing import Dict, Iterable, List, Optional

from tqdm import tqdm

from src.dynamic.planar import PlanarDynamicGraph
from src.harness.generators import generate_ops
from src.harness.trace import TraceOp
from src.utils.config import DEFAULT_SETTINGS, Settings

logger = logging.getLogger(__name__)


def replay_planar(n: int, ops: Iterable[TraceOp], settings: Optional[Settings] = None) -> Dict[str, int]:
    """Feed I/D ops to the planar structure alone; rejected edges are dropped.

    Deleting an edge that was rejected earlier is a no-op. Other op codes are
    ignored.
    """
    pdg = PlanarDynamicGraph(n, settings, keep_records=False)
    counts = {"inserts": 0, "rejects": 0, "deletes": 0, "flips": 0, "delete_flips": 0}
    for op in ops:
        before = pdg.flips_total
        if op.code == "I":
            counts["inserts"] += 1
            if not pdg.insert(*op.args):
                counts["rejects"] += 1
            counts["flips"] += pdg.flips_total - before
        elif op.code == "D" and pdg.has_edge(*op.args):
            pdg.delete(*op.args)
            counts["deletes"] += 1
            counts["delete_flips"] += pdg.flips_total - before
    return counts


def amortization_ratio(rows: List[Dict]) -> float:
    """max over rows of (flips/insert)/log2 n divided by the min.

    Rows without any flips carry no signal and are left out; with no
    such row the ratio is 1.
    """
    normalized = [row["flips_per_insert"] / math.log2(row["n"]) for row in rows if row["flips_per_insert"] > 0]
    if not normalized:
        return 1.0
    return max(normalized) / min(normalized)


def sweep_amortized(
    n_list: Iterable[int],
    ops_per_n: int,
    seeds: Iterable[int],
    settings: Optional[Settings] = None,
    show_progress: bool = True,
) -> Dict:
    """Mean flips per attempted insertion for each n, averaged over seeds."""
    settings = settings or DEFAULT_SETTINGS
    n_list = list(n_list)
    seeds = list(seeds)
    jobs = [(n, seed) for n in n_list for seed in seeds]
    per_n: Dict[int, List[Dict[str, int]]] = {n: [] for n in n_list}
    for n, seed in tqdm(jobs, desc="Sweeping", unit="run", disable=not show_progress):
        counts = replay_planar(n, generate_ops("planar-growth", n, ops_per_n, seed), settings)
        per_n[n].append(counts)
        logger.debug("n=%d seed=%d: %s", n, seed, counts)

    rows = []
    for n in n_list:
        runs = per_n[n]
        rates = [c["flips"] / c["inserts"] if c["inserts"] else 0.0 for c in runs]
        rows.append(
            {
                "n": n,
                "seeds": len(runs),
                "inserts": sum(c["inserts"] for c in runs),
                "rejects": sum(c["rejects"] for c in runs),
                "flips": sum(c["flips"] for c in runs),
                "delete_flips": sum(c["delete_flips"] for c in runs),
                "flips_per_insert": statistics.fmean(rates) if rates else 0.0,
            }
        )
    ratio = amortization_ratio(rows)
    logger.info("sweep over %s: ratio %.3f", n_list, ratio)
    return {"rows": rows, "ratio": ratio, "ops_per_n": ops_per_n, "seeds": seeds}
