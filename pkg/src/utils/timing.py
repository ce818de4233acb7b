import logging
import time
from typing import Any, Callable

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = "WARNING") -> None:
    """Configure root logging once for CLI runs."""
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format=LOG_FORMAT)


def time_process(process_name: str, func: Callable, *args, verbose: bool = False, **kwargs) -> Any:
    """Execute a function and time it, printing start/end messages if verbose is True."""
    if verbose:
        print(f"\nStarting process: {process_name}")
        start_time = time.time()

    result = func(*args, **kwargs)

    if verbose:
        elapsed_time = time.time() - start_time
        print(f"Completed process: {process_name} - Time: {elapsed_time:.2f} seconds")

        # Stage specific details
        if process_name == "Trace Parsing" and isinstance(result, dict):
            print(f"Vertices: {result.get('n', 0)}")
            print(f"Operations: {len(result.get('ops', []))}")

        elif process_name == "Trace Execution" and isinstance(result, dict):
            stats = result.get("stats", {})
            print(f"Inserts: {stats.get('inserts', 0)} (rejected: {stats.get('rejects', 0)})")
            print(f"Deletes: {stats.get('deletes', 0)}")
            print(f"Flips: {stats.get('flips_total', 0)}")
            if stats.get("mismatches", 0):
                print(f"Oracle mismatches: {stats.get('mismatches')}")

        elif process_name == "Amortization Sweep" and isinstance(result, dict):
            for row in result.get("rows", [])[:3]:
                print(f"  n={row.get('n')}: {row.get('flips_per_insert', 0):.3f} flips/insert")
            if len(result.get("rows", [])) > 3:
                print(f"  - Plus {len(result.get('rows', [])) - 3} more rows...")

        elif process_name == "Property Check" and isinstance(result, dict):
            failed = [name for name, item in result.get("properties", {}).items() if item.get("status") == "fail"]
            print(f"Properties checked: {len(result.get('properties', {}))}")
            print(f"Failures: {len(failed)}")
            for name in failed[:3]:
                print(f"  - {name}")

        print()

    return result
