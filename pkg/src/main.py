from dotenv import load_dotenv
import sys
import os
import time
import argparse

# Fix Python path for direct script execution
if __name__ == "__main__":
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    if parent_dir not in sys.path:
        sys.path.insert(0, parent_dir)

from src.utils.config import load_settings
from src.utils.errors import DynPlanarError
from src.utils.parsing import parse_int_list
from src.utils.timing import configure_logging, time_process
from src.harness import fixtures
from src.harness.generators import MODELS, generate_trace
from src.harness.sweep import sweep_amortized
from src.harness.trace import read_trace, run_trace
from src.analyzers.property_checker import audit_flip_sequence, check_properties
from src.oracle.embedding_space import embedding_key, enumerate_embeddings
from src.output.report_generator import (
    print_property_report,
    print_run_summary,
    print_sweep_summary,
    write_json,
)

EXIT_ERROR = 1
EXIT_MISMATCH = 2


def cmd_run(args, settings) -> int:
    trace = time_process("Trace Parsing", read_trace, args.trace, verbose=args.verbose)
    result = time_process(
        "Trace Execution",
        run_trace,
        trace,
        check_oracle=args.check_oracle,
        validate_every=args.validate_every,
        settings=settings,
        verbose=args.verbose,
    )
    if args.outputs:
        print("\n".join(result["outputs"]))
    print_run_summary(result, args.trace)
    if args.stats:
        path = write_json(result["stats"], args.stats)
        print(f"Run statistics saved to: {path}")
    stats = result["stats"]
    return EXIT_MISMATCH if stats["mismatches"] or stats["violations"] else 0


def cmd_gen(args, settings) -> int:
    text = generate_trace(args.model, args.n, args.ops, args.seed)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
        print(f"Trace saved to: {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_sweep(args, settings) -> int:
    ns = parse_int_list(args.ns)
    seeds = parse_int_list(args.seeds)
    if not ns or not seeds:
        raise DynPlanarError("--ns and --seeds need at least one value each")
    result = time_process(
        "Amortization Sweep",
        sweep_amortized,
        ns,
        args.ops,
        seeds,
        settings=settings,
        show_progress=not args.quiet,
        verbose=args.verbose,
    )
    print_sweep_summary(result)
    if args.output:
        path = write_json(result, args.output)
        print(f"Sweep results saved to: {path}")
    return 0


def cmd_oracle(args, settings) -> int:
    n, edges = fixtures.build(args.fixture)
    max_edges = args.max_edges or settings.oracle_max_edges
    space = enumerate_embeddings(n, edges, max_edges)
    report = time_process(
        "Property Check",
        check_properties,
        n,
        edges,
        args.u,
        args.v,
        space=space,
        max_edges=max_edges,
        verbose=args.verbose,
    )
    if args.audit:
        start = embedding_key(fixtures.embedding(args.fixture))
        report["audit"] = audit_flip_sequence(space, start, args.u, args.v, settings)
    print_property_report(report)
    if "audit" in report:
        audit = report["audit"]
        print(f"\nGreedy audit: {audit['flips']} flips, accepted={audit['accepted']}, "
              f"decreasing/neutral/increasing = {audit['decreasing']}/{audit['neutral']}/{audit['increasing']}")
    if args.output:
        path = write_json(report, args.output)
        print(f"Property report saved to: {path}")
    return 0 if report["ok"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Fully-dynamic planarity with embedding maintenance by flips.")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output with timing information")
    parser.add_argument("--log-level", help="Logging level (default: DYNPLANAR_LOG_LEVEL or WARNING)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Replay a trace file")
    run.add_argument("--trace", required=True, help="Path to the trace file")
    run.add_argument("--check-oracle", action="store_true", help="Recompute planarity statically after every op")
    run.add_argument("--validate-every", action="store_true", help="Validate the embedding after every op")
    run.add_argument("--stats", help="Path where the JSON run statistics will be saved")
    run.add_argument("--backend", choices=("reference", "balanced"), help="Tree primitive backend")
    run.add_argument("--outputs", action="store_true", help="Print one output line per op")

    gen = sub.add_parser("gen", help="Generate a seeded trace")
    gen.add_argument("--model", choices=MODELS, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--ops", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", help="Write the trace here instead of stdout")

    sweep = sub.add_parser("sweep", help="Measure amortized flips per insertion over n")
    sweep.add_argument("--ns", required=True, help="Comma separated vertex counts, e.g. 64,128,256")
    sweep.add_argument("--ops", type=int, required=True, help="Insertions per run")
    sweep.add_argument("--seeds", default="1,2,3", help="Comma separated seeds")
    sweep.add_argument("--backend", choices=("reference", "balanced"))
    sweep.add_argument("-q", "--quiet", action="store_true", help="Hide the progress bar")
    sweep.add_argument("-o", "--output", help="Path where the JSON sweep table will be saved")

    oracle = sub.add_parser("oracle", help="Check the cost properties on a named fixture")
    oracle.add_argument("--fixture", required=True, help=f"One of {', '.join(sorted(fixtures.FIXTURES))}")
    oracle.add_argument("--u", type=int, required=True)
    oracle.add_argument("--v", type=int, required=True)
    oracle.add_argument("--max-edges", type=int, help="Refuse graphs with more edges than this")
    oracle.add_argument("--audit", action="store_true", help="Also audit the greedy flips from the fixture's embedding")
    oracle.add_argument("-o", "--output", help="Path where the JSON property report will be saved")
    return parser


COMMANDS = {"run": cmd_run, "gen": cmd_gen, "sweep": cmd_sweep, "oracle": cmd_oracle}


def main(argv=None) -> int:
    """Main function to run the CLI."""
    load_dotenv()
    args = build_parser().parse_args(argv)

    try:
        settings = load_settings(backend=getattr(args, "backend", None), log_level=args.log_level)
        configure_logging(settings.log_level)
        start_time = time.time()
        code = COMMANDS[args.command](args, settings)
    except DynPlanarError as e:
        print(f"Error: {e}")
        return EXIT_ERROR
    except FileNotFoundError as e:
        print(f"Error: File '{e.filename}' does not exist")
        return EXIT_ERROR

    if args.verbose:
        print(f"\nTotal time: {time.time() - start_time:.2f} seconds")
    return code


if __name__ == "__main__":
    sys.exit(main())
