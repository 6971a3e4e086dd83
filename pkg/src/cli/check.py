"""
check ALPHA BETA [--depth N]

Admissibility report for a candidate pair.
Exit 0 if Admissible, 3 if NotAdmissible, 4 if Unknown.
"""

from __future__ import annotations

from src.admissibility import check_admissible
from src.cli.args import VERDICT_EXIT, add_pair_arguments, pair_inputs, read_pair
from src.utils.io import RunResult, log
from src.utils.time import Stopwatch


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("check", parents=list(parents), help="check admissibility of (alpha, beta)")
    add_pair_arguments(parser)
    parser.add_argument("--depth", type=int, default=None,
                        help="shift/compare depth for rule-defined streams")
    parser.set_defaults(func=run)


def run(args, settings):
    clock = Stopwatch()
    pair = read_pair(args, settings)
    log(f"Checking admissibility of {pair}...")
    report = check_admissible(pair, depth=args.depth, settings=settings)
    clock.lap("check")

    level = "ok" if report.verdict.value == "Admissible" else "warn"
    log(f"{pair}: {report.verdict.value}", level)
    result = RunResult(
        "check",
        pair_inputs(args, settings, depth=args.depth or settings.stream_depth),
        report,
        {"timings": clock.laps},
    )
    return result, VERDICT_EXIT[report.verdict]
