#!/usr/bin/env python3
"""
Residual intersections - Command Line Interface

Runs algebra commands on ``.ri`` problem sources and prints one JSON report
on stdout. Diagnostics, progress and logs go to stderr.

Exit codes: 0 success, 1 internal error or corpus mismatch, 2 input error,
3 budget exceeded.
"""
import sys
import argparse
import logging
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich import box
from rich.logging import RichHandler

from config import CONFIG
from algebra.errors import BudgetExceededError, InputError
from corpus_runner import CorpusRunner
from problem_source import load_source
from schema import Report, compute_digest
from tools import (
    COMMAND_REGISTRY,
    add_command_options,
    execute_command,
    get_commands_by_category,
    options_from_namespace,
)

console = Console(stderr=True)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def setup_logging(verbose: bool = False, debug: bool = False):
    """
    Set up logging configuration.

    Args:
        verbose: Enable verbose logging
        debug: Enable debug logging
    """
    if debug:
        level = logging.DEBUG
    elif verbose:
        level = logging.INFO
    else:
        level = getattr(logging, CONFIG.LOG_LEVEL.upper(), logging.WARNING)
        level = max(level, logging.WARNING)

    logging.basicConfig(
        level=level,
        format='%(message)s',
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
        force=True,
    )


def print_header(title: str, subtitle: str = ""):
    """Print formatted header."""
    text = f"[bold magenta]{title}[/bold magenta]"
    if subtitle:
        text += f"\n{subtitle}"
    console.print(Panel.fit(text, border_style="magenta"))


def print_error(message: str):
    """Print error message."""
    console.print(f"[bold red]✗ Error:[/bold red] {message}")


def print_success(message: str):
    """Print success message."""
    console.print(f"[bold green]✓[/bold green] {message}")


def print_warning(message: str):
    """Print warning message."""
    console.print(f"[bold yellow]⚠[/bold yellow] {message}")


def recorded_argv(argv: List[str], command: Optional[str], source: Optional[str]) -> List[str]:
    """
    The typed arguments as they go into the report and its digest.

    Every token after the subcommand is kept in order, on either side of the
    source path; the path itself is dropped since the source enters the digest
    by its text. Global flags (``--no-timing``, ``--workers``) only shape the
    presentation and are not recorded.
    """
    tokens = list(argv)
    if command is None or command not in tokens:
        return []
    rest = tokens[tokens.index(command) + 1:]
    if source is not None and source in rest:
        rest.remove(source)
    return rest


def emit_report(report: Report, include_timing: bool = True):
    sys.stdout.write(report.to_json(include_timing) + "\n")
    sys.stdout.flush()


# ============================================================================
# Command: any registered algebra command
# ============================================================================

def cmd_run(args):
    """
    Parse the source, execute one registered command, print its report.

    Args:
        args: Parsed command-line arguments
    """
    options = options_from_namespace(args)
    source = load_source(Path(args.source))
    argv = args.raw_argv
    saved_budget = CONFIG.GB_STEP_BUDGET
    if options.budget:
        CONFIG.GB_STEP_BUDGET = options.budget
    try:
        report = execute_command(args.command, source, options, argv)
    finally:
        CONFIG.GB_STEP_BUDGET = saved_budget
    emit_report(report, include_timing=not args.no_timing)
    if args.verbose:
        print_success(f"{args.command} finished in {report.timing_seconds:.2f}s")
    return EXIT_OK


# ============================================================================
# Command: corpus
# ============================================================================

def cmd_corpus(args):
    """
    Run the golden corpus and compare every case with its expectation.

    Args:
        args: Parsed command-line arguments
    """
    corpus_dir = Path(args.dir or CONFIG.CORPUS_DIR)
    if args.verbose:
        print_header("Golden Corpus", f"Directory: {corpus_dir}")

    runner = CorpusRunner(corpus_dir, max_workers=args.workers, update=args.update)
    if args.update:
        print_warning("Rewriting every expectation from this run")
    summary = runner.run()
    runner.print_report(summary)

    report = Report(
        command="corpus",
        argv=[str(corpus_dir)],
        inputs_digest=compute_digest("", "corpus", [str(corpus_dir)]),
        outputs=summary.to_outputs(),
        timing_seconds=round(sum(c.timing_seconds for c in summary.cases), 3),
    )
    emit_report(report, include_timing=not args.no_timing)

    if summary.success:
        print_success(f"All {summary.total} corpus cases passed")
        return EXIT_OK
    print_warning(f"{summary.failed} corpus case(s) failed")
    return EXIT_FAILURE


# ============================================================================
# Command: commands
# ============================================================================

def cmd_commands(args):
    """List registered commands by category."""
    for category in ("ideal", "residual", "invariant"):
        table = Table(title=f"{category} commands", show_header=True,
                      header_style="bold cyan", box=box.ROUNDED)
        table.add_column("Command", style="cyan", width=16)
        table.add_column("Description", style="white")
        for definition in get_commands_by_category(category):
            table.add_row(definition["name"], definition["description"])
        console.print(table)
    return EXIT_OK


def create_parser():
    """Create argument parser with all commands."""
    parser = argparse.ArgumentParser(
        prog='ri',
        description='General residual intersections, links and singularity invariants',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Is a general 3-residual intersection of X empty?
  %(prog)s residual corpus/two_planes_standard_residual.ri --t 3 --seed 42 --trials 5
  %(prog)s predict corpus/two_planes_standard_residual.ri --t 3

  # Same question after appending x_i*f_1 to the generators
  %(prog)s residual corpus/two_planes_standard_residual.ri --t 3 --augment

  # Exact monomial invariants
  %(prog)s lct-monomial corpus/lct_cusp.ri
  %(prog)s mult-ideal corpus/mult_ideal.ri --exponent 3/2

  # Run the golden corpus; re-freeze it after an intended change
  %(prog)s corpus
  %(prog)s corpus --update

For more information, see README.md and docs/ in this repository.
        """
    )

    # Global arguments
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Show detailed output'
    )
    parser.add_argument(
        '--debug',
        action='store_true',
        help='Show debug logs and tracebacks'
    )
    parser.add_argument(
        '--workers',
        type=int,
        default=None,
        help=f'Worker cap for concurrent tasks (default: {CONFIG.MAX_WORKERS})'
    )
    parser.add_argument(
        '--no-timing',
        action='store_true',
        help='Omit timing_seconds from the JSON report'
    )

    # Subcommands
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    for name, definition in COMMAND_REGISTRY.items():
        parser_command = subparsers.add_parser(
            name,
            help=definition['description'],
            description=definition['description']
        )
        parser_command.add_argument('source', type=str, help='Problem source (.ri file)')
        add_command_options(parser_command)
        parser_command.set_defaults(func=cmd_run)

    # Command: corpus
    parser_corpus = subparsers.add_parser(
        'corpus',
        help='Run the golden corpus',
        description='Run every bundled case and diff it against the committed expectation'
    )
    parser_corpus.add_argument(
        '--dir',
        type=str,
        default=None,
        help=f'Corpus directory (default: {CONFIG.CORPUS_DIR})'
    )
    parser_corpus.add_argument(
        '--update',
        action='store_true',
        help='Re-run every case and freeze its full report as the new expectation'
    )
    parser_corpus.set_defaults(func=cmd_corpus)

    # Command: commands
    parser_commands = subparsers.add_parser(
        'commands',
        help='List available commands',
        description='List registered algebra commands by category'
    )
    parser_commands.set_defaults(func=cmd_commands)

    return parser


def main(argv=None):
    """Main CLI entry point."""
    parser = create_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    args.raw_argv = recorded_argv(argv, args.command, getattr(args, "source", None))

    # Set up logging
    setup_logging(verbose=args.verbose, debug=args.debug)

    # Show help if no command
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_OK

    saved_workers = CONFIG.MAX_WORKERS
    if args.workers is not None:
        if args.workers < 1:
            print_error("--workers must be ≥ 1")
            return EXIT_INPUT
        CONFIG.MAX_WORKERS = args.workers

    # Execute command
    try:
        return args.func(args)
    except (InputError, ValidationError) as e:
        print_error(str(e))
        return EXIT_INPUT
    except BudgetExceededError as e:
        print_error(f"budget exceeded: {e}")
        return EXIT_BUDGET
    except KeyboardInterrupt:
        print_warning("Interrupted by user")
        return EXIT_FAILURE
    except Exception as e:
        print_error(f"Command failed: {e}")
        if args.debug:
            console.print_exception()
        return EXIT_FAILURE
    finally:
        CONFIG.MAX_WORKERS = saved_workers


if __name__ == '__main__':
    sys.exit(main())
