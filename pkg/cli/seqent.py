#!/usr/bin/env python3
"""
CLI for finite-scale sequence entropy computations.

Usage:
    python -m cli.seqent entropy measure --config example61-measure
    python -m cli.seqent entropy top --config data/configs/rotation-null.json --out top.csv
    python -m cli.seqent density --config example61-measure
    python -m cli.seqent search --config fullshift-independence
    python -m cli.seqent reproduce example61 --unit bits

Exit codes:
    0  success
    1  config error (unreadable, inconsistent or malformed input)
    2  capacity truncation (enumeration or exact-solver budget exceeded)
    3  reproduction verification failure

CSV / JSON go to stdout (or --out); status lines and errors go to stderr.
"""
import sys
import argparse
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

import config
from core.errors import CapacityError, ConfigError, ExportError, MalformedInputError, VerificationError
from core.models import EntropyProfile, EntropyUnit
from core.orchestrator import Orchestrator
from core.run_config import load_run_config
from eval.reproduction_reports import summarize_reproduction, verify_reproduction
from exports import default_export_manager
from utils.numbers import format_number

# Try to import rich for better output
try:
    from rich.console import Console
    from rich.markup import escape
    from rich.table import Table
    RICH_AVAILABLE = True
    console = Console(stderr=True)
except ImportError:
    RICH_AVAILABLE = False
    console = None

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CAPACITY = 2
EXIT_VERIFICATION = 3


def print_info(message: str):
    """Print info message."""
    if RICH_AVAILABLE:
        console.print(f"[blue]ℹ[/blue] {escape(message)}")
    else:
        print(f"INFO: {message}", file=sys.stderr)


def print_success(message: str):
    """Print success message."""
    if RICH_AVAILABLE:
        console.print(f"[green]✓[/green] {escape(message)}")
    else:
        print(f"SUCCESS: {message}", file=sys.stderr)


def print_error(message: str):
    """Print error message."""
    if RICH_AVAILABLE:
        console.print(f"[red]✗[/red] {escape(message)}")
    else:
        print(f"ERROR: {message}", file=sys.stderr)


def print_warning(message: str):
    """Print warning message."""
    if RICH_AVAILABLE:
        console.print(f"[yellow]⚠[/yellow] {escape(message)}")
    else:
        print(f"WARNING: {message}", file=sys.stderr)


def emit(report: Any, format_name: str, out: Optional[str]):
    """Write a report to --out, or to stdout when no path is given."""
    manager = default_export_manager()
    if out:
        path = manager.export(report, format_name, Path(out))
        print_success(f"Output written to: {path}")
    else:
        sys.stdout.write(manager.render(report, format_name))
        sys.stdout.flush()


def summarize_profile(profile: EntropyProfile) -> int:
    """Print the summary line for a profile and return the exit code."""
    if profile.rows:
        final = profile.final
        print_info(
            f"{profile.kind.value} profile: {len(profile.rows)} rows, final normalized "
            f"{format_number(final.normalized)} {profile.unit.value} at n={final.n}, "
            f"tail max {format_number(profile.tail_max)}"
        )
    if profile.truncated:
        print_warning(f"Profile truncated after {len(profile.rows)} rows: {profile.truncation_reason}")
        return EXIT_CAPACITY
    return EXIT_OK


def show_reproduction_summary(report) -> None:
    summary = summarize_reproduction(report)
    if RICH_AVAILABLE:
        table = Table(title=f"Reproduction ({report.unit.value})")
        table.add_column("Quantity", style="cyan")
        table.add_column("Rows", style="white")
        table.add_column("Max deviation", style="yellow")
        table.add_column("OK", style="green")
        for quantity, entry in summary.items():
            ok = "[green]✓[/green]" if entry["ok"] else "[red]✗[/red]"
            table.add_row(quantity, str(entry["rows"]), f"{entry['max_deviation']:.3g}", ok)
        console.print(table)
    else:
        for quantity, entry in summary.items():
            print(f"  {quantity}: {entry['rows']} rows, max deviation {entry['max_deviation']:.3g}", file=sys.stderr)


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed command; exceptions propagate to main()."""
    orchestrator = Orchestrator(jobs=args.jobs, unit=args.unit, budget=args.budget)

    if args.command == "reproduce":
        report = orchestrator.reproduce_example61()
        emit(report, "csv", args.out)
        show_reproduction_summary(report)
        if report.truncated:
            print_warning(f"Reproduction truncated after {len(report.rows)} rows: {report.truncation_reason}")
            return EXIT_CAPACITY
        verify_reproduction(report)
        print_success(f"All {len(report.rows)} rows match their closed forms")
        return EXIT_OK

    if not args.config:
        raise ConfigError("--config is required for this command", "Pass --config <path or packaged name>")
    cfg = load_run_config(args.config)

    if args.command == "entropy":
        profile = orchestrator.entropy_measure(cfg) if args.kind == "measure" else orchestrator.entropy_top(cfg)
        emit(profile, "csv", args.out)
        return summarize_profile(profile)

    if args.command == "density":
        report = orchestrator.density(cfg)
        emit(report, "csv", args.out)
        print_info(
            f"Density over n <= {cfg.n_range[-1]}: lower {format_number(report.lower)}, "
            f"upper {format_number(report.upper)} (tail from n={report.window_start})"
        )
        return EXIT_OK

    report = orchestrator.search(cfg)
    emit(report, "json", args.out)
    print_info(f"Search {report['mode']} finished (finite-scale evidence)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", "-c",
        default=None,
        help="Run config JSON (path, or name of a packaged config in data/configs/)"
    )
    common.add_argument(
        "--unit", "-u",
        choices=[u.value for u in EntropyUnit],
        default=None,
        help="Entropy unit for output (default: the config's, else nats)"
    )
    common.add_argument(
        "--jobs", "-j",
        type=int,
        default=None,
        help=f"Row-level worker threads (default: {config.DEFAULT_JOBS})"
    )
    common.add_argument(
        "--budget", "-b",
        type=int,
        default=None,
        help=f"Enumeration budget in configurations (default: {config.ENUMERATION_BUDGET})"
    )
    common.add_argument(
        "--out", "-o",
        default=None,
        help="Output file (default: stdout)"
    )
    common.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose logging"
    )

    parser = argparse.ArgumentParser(
        prog="seqent",
        description="Finite-scale sequence entropy for Z^d actions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s entropy measure --config example61-measure
  %(prog)s entropy top --config rotation-null --jobs 4
  %(prog)s search --config fullshift-independence --out witness.json
  %(prog)s reproduce example61 --unit bits
        """
    )
    commands = parser.add_subparsers(dest="command", required=True)

    entropy = commands.add_parser("entropy", parents=[common], help="Sequence entropy profile")
    entropy.add_argument("kind", choices=["measure", "top"], help="Measure-theoretic or topological")

    commands.add_parser("density", parents=[common], help="Density table of the subset")
    commands.add_parser("search", parents=[common], help="Constructive search (mode from the config)")

    reproduce = commands.add_parser("reproduce", parents=[common], help="Packaged reproduction")
    reproduce.add_argument("example", choices=["example61"], help="Reproduction to run")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    args = build_parser().parse_args(argv)

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if args.jobs is not None and args.jobs < 1:
        print_error("--jobs must be >= 1")
        return EXIT_CONFIG
    if args.budget is not None and args.budget < 1:
        print_error("--budget must be >= 1")
        return EXIT_CONFIG

    try:
        return run(args)
    except (ConfigError, MalformedInputError, ExportError) as e:
        print_error(str(e))
        return EXIT_CONFIG
    except CapacityError as e:
        print_error(str(e))
        return EXIT_CAPACITY
    except VerificationError as e:
        print_error(str(e))
        return EXIT_VERIFICATION


if __name__ == "__main__":
    sys.exit(main())
