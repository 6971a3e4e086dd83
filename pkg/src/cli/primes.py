"""
primes [--max N] [--format json|csv] [--out FILE]

Primality read off the critical orbit of the map rebuilt from the prime pair:
n is prime iff f^(n-1)(p) > p. Every row is checked against a sieve; any
disagreement gives exit 5.
"""

from __future__ import annotations

import pandas as pd
from mpmath import nstr

from src.cli.args import EXIT_MISMATCH, EXIT_OK
from src.dynamics import primality_rows
from src.utils.io import RunResult, log, write_table
from src.utils.time import Stopwatch
from src.words import is_prime


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("primes", parents=list(parents), help="primality from the critical orbit")
    parser.add_argument("--max", type=int, default=100, dest="nmax")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default=None, help="CSV destination (default stdout)")
    parser.set_defaults(func=run)


def primes_table(rows) -> pd.DataFrame:
    return pd.DataFrame([
        {
            "n": row.n,
            "indicator": row.indicator,
            "sieve": is_prime(row.n),
            "iterate": nstr(row.iterate.value, 20),
            "error_bound": nstr(row.iterate.error_bound, 3),
            "bits": row.bits,
        }
        for row in rows
    ])


def run(args, settings):
    if args.nmax < 2:
        raise ValueError("--max must be at least 2")
    clock = Stopwatch()
    log(f"Reconstructing the prime map and iterating {args.nmax - 1} steps...")
    table = primes_table(primality_rows(args.nmax, settings))
    clock.lap("orbit")

    disagreements = table.loc[table["indicator"] != table["sieve"], "n"].tolist()
    if disagreements:
        log(f"Indicator disagrees with the sieve at n = {disagreements}", "error")
    else:
        log(f"Indicator matches the sieve for n = 2..{args.nmax}", "ok")
    code = EXIT_MISMATCH if disagreements else EXIT_OK

    if args.format == "csv":
        write_table(table, args.out)
        return None, code
    result = RunResult(
        "primes",
        {"max": args.nmax, "precision_digits": settings.precision_digits, "tol": settings.tol},
        {"rows": table, "disagreements": disagreements},
        {"bits": int(table["bits"].iloc[0]), "timings": clock.laps},
    )
    return result, code
