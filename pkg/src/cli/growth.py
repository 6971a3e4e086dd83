"""
growth ALPHA BETA [--mode exact|estimate] [--max-len L] [--table FILE]

Prefix counts and growth rate of the address space. For periodic pairs the
report also sets the rate beside ln(1/r), the entropy of the reconstructed map.
"""

from __future__ import annotations

import pandas as pd

from src.cli.args import EXIT_OK, add_pair_arguments, pair_inputs, read_pair
from src.cli.claims import annotate
from src.growth import classify_growth, estimate_growth
from src.projection import RootStatus, smallest_root
from src.utils.io import RunResult, log, write_table
from src.utils.time import Stopwatch


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("growth", parents=list(parents), help="prefix counts and growth rate")
    add_pair_arguments(parser)
    parser.add_argument("--mode", choices=("exact", "estimate"), default="exact")
    parser.add_argument("--max-len", type=int, default=20)
    parser.add_argument("--table", default=None, help="also write the counts table as CSV")
    parser.set_defaults(func=run)


def counts_table(report) -> pd.DataFrame:
    return pd.DataFrame({
        "L": range(1, len(report.counts)),
        "count": report.counts[1:],
        "rate_bound": [float(r.upper) if r is not None else float("-inf") for r in report.per_length_rates],
    })


def entropy_check(pair, report, settings) -> dict | None:
    """Measured rate next to ln(1/r)."""
    root = smallest_root(pair, settings.tol, settings)
    if root.status is RootStatus.NONE_FOUND:
        return None
    ln_a = (1 / root.r).log()
    return {"rate": report.rate, "ln_a": ln_a, "difference": report.rate - ln_a}


def run(args, settings):
    clock = Stopwatch()
    pair = read_pair(args, settings)
    if args.mode == "exact" and not pair.is_eventually_periodic:
        raise ValueError("exact mode needs eventually periodic words; use --mode estimate")

    if args.mode == "exact":
        report = classify_growth(pair, settings, args.max_len)
    else:
        report = estimate_growth(pair, args.max_len, settings)
    clock.lap("growth")
    log(f"{pair}: {report.classification.value}, rate ≈ {float(report.rate):.10f}", "ok")

    outputs = {"report": report}
    if pair.is_eventually_periodic:
        check = entropy_check(pair, report, settings)
        if check is not None:
            outputs["entropy_check"] = check
        clock.lap("entropy_check")
    published = annotate(pair, {"growth_rate": report.rate})
    if published:
        outputs["published"] = published
        for row in published:
            log(f"published {row['quantity']} = {row['published']}, measured ≈ {float(row['measured']):.6f}", "warn")

    if args.table:
        write_table(counts_table(report), args.table)
    result = RunResult(
        "growth",
        pair_inputs(args, settings, mode=args.mode, max_len=args.max_len),
        outputs,
        {"timings": clock.laps},
    )
    return result, EXIT_OK
