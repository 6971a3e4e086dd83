"""
Command-line entry point.

Usage:
    python -m src.cli.main check "01(10)" "10(01)"
    python -m src.cli.main solve "@primes" "1(0)" --tol 1e-10
    python -m src.cli.main reconstruct "0(10)" "1(0)" --verify-len 64
    python -m src.cli.main growth "0(10)" "1(0)" --mode exact
    python -m src.cli.main primes --max 200
    python -m src.cli.main plotdata --a 2 --p 0.5 --len 5 --out data/plot.csv
    python -m src.cli.main search-null --max-pre 2 --max-per 2

JSON goes to stdout, status lines to stderr. Exit codes: 0 ok, 1 usage or
parse error, 2 solver failure or precision ceiling, 3 not admissible,
4 unknown/inconclusive, 5 mismatch.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[2]))
from src.cli import check, growth, plotdata, primes, reconstruct, search_null, solve  # noqa: E402
from src.cli.args import EXIT_SOLVER, EXIT_USAGE  # noqa: E402
from src.config import get_settings  # noqa: E402
from src.errors import (  # noqa: E402
    ConfigError,
    DepthExhaustedError,
    KneadingError,
    PrecisionCeilingError,
    RootNotFoundError,
)
from src.utils.io import emit_json, log, set_verbose  # noqa: E402

COMMANDS = (check, solve, reconstruct, growth, primes, plotdata, search_null)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; usage errors here are exit 1."""

    def error(self, message):
        raise UsageError(message)


def _global_flags(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS lets the flags appear before or after the subcommand
    parser.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="working decimal digits (default 50)")
    parser.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="root tolerance (default 1e-12)")
    parser.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="silence status lines on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knead", description="Critical itineraries of uniform overlapping maps")
    _global_flags(parser)
    common = _Parser(add_help=False)
    _global_flags(common)
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for module in COMMANDS:
        module.register(subparsers, [common])
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        log(f"Usage error: {e}", "error")
        return EXIT_USAGE

    try:
        settings = get_settings().with_overrides(
            precision_digits=getattr(args, "precision", None),
            tol=getattr(args, "tol", None),
        )
    except ConfigError as e:
        log(str(e), "error")
        return EXIT_USAGE
    set_verbose(settings.verbose and not getattr(args, "quiet", False))

    try:
        result, code = args.func(args, settings)
    except (RootNotFoundError, PrecisionCeilingError, DepthExhaustedError) as e:
        log(str(e), "error")
        return EXIT_SOLVER
    except (ValueError, UsageError) as e:
        log(f"Invalid input: {e}", "error")
        return EXIT_USAGE
    except KneadingError as e:
        log(str(e), "error")
        return EXIT_SOLVER

    if result is not None:
        emit_json(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
