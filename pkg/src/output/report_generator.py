import json
import math
from pathlib import Path
from typing import Any, Dict, Union

from src.utils.parsing import print_section_header


def print_run_summary(result: Dict[str, Any], source: str = "") -> None:
    """Print the counters of one trace run."""
    stats = result.get("stats", {})
    print_section_header(f"TRACE RUN SUMMARY {source}".rstrip())

    print(f"\nVertices: {stats.get('n', 0)}")
    print(f"Operations: {stats.get('ops', 0)} ({stats.get('wall_ms', 0.0):.1f} ms)")

    print("\nUPDATES:")
    print(f"Inserts: {stats.get('inserts', 0)} (rejected: {stats.get('rejects', 0)})")
    print(f"Deletes: {stats.get('deletes', 0)}")

    print("\nFLIPS:")
    print(f"Total: {stats.get('flips_total', 0)} ({stats.get('flips_per_insert', 0.0):.3f} per insert)")
    print(f"  Articulation: {stats.get('flips_art', 0)}")
    print(f"  SR: {stats.get('flips_sr', 0)}")
    print(f"  P: {stats.get('flips_p', 0)}")
    if stats.get("drain_flips", 0):
        print(f"  Spent re-inserting deferred edges: {stats.get('drain_flips')}")

    problems = result.get("problems", [])
    print("\nCHECKS:")
    print(f"Oracle mismatches: {stats.get('mismatches', 0)}")
    print(f"Invariant violations: {stats.get('violations', 0)}")
    for item in problems[:3]:
        print(f"  - {item}")
    if len(problems) > 3:
        print(f"  - Plus {len(problems) - 3} more...")

    print_section_header("END OF RUN SUMMARY")


def print_sweep_summary(sweep: Dict[str, Any]) -> None:
    print_section_header("AMORTIZED FLIPS PER INSERTION")
    print(f"\nOps per n: {sweep.get('ops_per_n', 0)}, seeds: {', '.join(map(str, sweep.get('seeds', [])))}")
    print(f"\n  {'n':>6}  {'inserts':>8}  {'rejects':>8}  {'flips':>8}  {'flips/ins':>9}  {'/log2 n':>8}")
    for row in sweep.get("rows", []):
        normalized = row["flips_per_insert"] / math.log2(row["n"]) if row["n"] > 1 else 0.0
        print(
            f"  {row['n']:>6}  {row['inserts']:>8}  {row['rejects']:>8}  {row['flips']:>8}"
            f"  {row['flips_per_insert']:>9.3f}  {normalized:>8.3f}"
        )
    print(f"\nmax/min of (flips per insert)/log2 n: {sweep.get('ratio', 1.0):.3f}")
    print_section_header("END OF SWEEP")


def print_property_report(report: Dict[str, Any]) -> None:
    """Print the per-property results of a property check."""
    graph = report.get("graph", {})
    print_section_header(f"PROPERTY CHECK FOR ({graph.get('u')},{graph.get('v')})")
    print(f"\nGraph: n={graph.get('n')}, {len(graph.get('edges', []))} edges")
    print(f"Embeddings: {report.get('embeddings', 0)}, flips between them: {report.get('flips', 0)}")

    strut_info = report.get("struts", {})
    print("\nSTRUTS:")
    print(f"Critical: {strut_info.get('critical', [])}")
    print(f"Off-critical: {strut_info.get('off_critical', [])}")
    if strut_info.get("dropped"):
        print(f"Dropped candidates: {strut_info.get('dropped')}")

    print("\nPROPERTIES:")
    for name, item in report.get("properties", {}).items():
        status = item.get("status", "skipped")
        tag = "" if item.get("asserted") else " (recorded)"
        print(f"  {name}: {status.upper()}{tag} [{item.get('checked', 0)} checked]")
        if "measured" in item:
            print(f"    Measured: {item['measured']}")
        evidence = item.get("evidence", [])
        if status == "fail" and evidence:
            for line in evidence[:3]:
                print(f"      - {line}")
            if len(evidence) > 3:
                print(f"      - Plus {len(evidence) - 3} more evidence items...")

    print("\nVERIFICATION SUMMARY:")
    if report.get("ok"):
        print("PASSED - every asserted property holds")
    else:
        print(f"FAILED - asserted properties broken: {', '.join(report.get('failures', []))}")
    if report.get("recorded_failures"):
        print(f"Recorded deviations: {', '.join(report['recorded_failures'])}")
    print_section_header("END OF PROPERTY CHECK")


def write_json(data: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w") as f:
        f.write(json.dumps(data, indent=2, default=str))
    return path
