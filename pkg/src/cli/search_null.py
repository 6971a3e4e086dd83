"""
search-null [--max-pre P] [--max-per Q] [--limit K] [--jobs J]

Enumerate eventually periodic pairs with |pre| <= P and |per| <= Q, keep the
admissible ones and classify their growth. Prints one JSON line per Null
pair, then a one-line summary.
"""

from __future__ import annotations

import itertools
import json

from joblib import Parallel, delayed

from src.admissibility import CriticalPair, Verdict, check_admissible
from src.cli.args import EXIT_OK
from src.config import Settings
from src.growth import GrowthClass, classify_growth
from src.utils.io import RunResult, log, to_jsonable
from src.utils.time import Stopwatch
from src.words import EPWord, format_word

MAX_BOUND = 8


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("search-null", parents=list(parents), help="search small periodic pairs for null ones")
    parser.add_argument("--max-pre", type=int, default=2)
    parser.add_argument("--max-per", type=int, default=2)
    parser.add_argument("--limit", type=int, default=None, help="stop after K candidate pairs")
    parser.add_argument("--jobs", type=int, default=1, help="joblib worker processes")
    parser.set_defaults(func=run)


def _bit_strings(max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        for bits in itertools.product((0, 1), repeat=n):
            yield bits


def candidate_words(max_pre: int, max_per: int, head: tuple[int, int]) -> list[EPWord]:
    """Canonical words pre(per) starting with `head`, in a fixed order."""
    found = {}
    for pre in _bit_strings(max_pre):
        for per in _bit_strings(max_per, 1):
            w = EPWord(pre, per)
            if (w.symbol_at(0), w.symbol_at(1)) == head:
                found[format_word(w)] = w
    return [found[k] for k in sorted(found, key=lambda s: (len(s), s))]


def candidate_pairs(max_pre: int, max_per: int, limit: int | None = None) -> list[CriticalPair]:
    alphas = candidate_words(max_pre, max_per, (0, 1))
    betas = candidate_words(max_pre, max_per, (1, 0))
    pairs = (CriticalPair(a, b) for a, b in itertools.product(alphas, betas))
    return list(itertools.islice(pairs, limit))


def examine(pair: CriticalPair, settings: Settings) -> dict:
    report = check_admissible(pair, settings=settings)
    row = {"alpha": format_word(pair.alpha), "beta": format_word(pair.beta),
           "admissibility": report.verdict.value}
    if report.verdict is Verdict.ADMISSIBLE:
        growth = classify_growth(pair, settings)
        row.update({
            "classification": growth.classification.value,
            "rate": to_jsonable(growth.rate),
            "states": growth.states,
        })
    return row


def summarize(rows: list[dict]) -> dict:
    admissible = [r for r in rows if r["admissibility"] == Verdict.ADMISSIBLE.value]
    by_class = {c.value: sum(r.get("classification") == c.value for r in admissible) for c in GrowthClass}
    return {
        "enumerated": len(rows),
        "admissible": len(admissible),
        "null": by_class[GrowthClass.NULL.value],
        "non_null": by_class[GrowthClass.NON_NULL.value],
        "unknown": by_class[GrowthClass.UNKNOWN.value],
    }


def run(args, settings):
    if not (0 <= args.max_pre <= MAX_BOUND and 1 <= args.max_per <= MAX_BOUND):
        raise ValueError(f"--max-pre must lie in [0, {MAX_BOUND}] and --max-per in [1, {MAX_BOUND}]")
    clock = Stopwatch()
    pairs = candidate_pairs(args.max_pre, args.max_per, args.limit)
    log(f"Examining {len(pairs)} candidate pairs with {args.jobs} job(s)...")
    rows = Parallel(n_jobs=args.jobs)(delayed(examine)(pair, settings) for pair in pairs)
    clock.lap("search")

    for row in rows:
        if row.get("classification") == GrowthClass.NULL.value:
            print(json.dumps({"finding": row}, sort_keys=True))
    summary = summarize(rows)
    log(f"{summary['admissible']} admissible, {summary['null']} null", "ok")
    result = RunResult(
        "search-null",
        {"max_pre": args.max_pre, "max_per": args.max_per, "limit": args.limit},
        {"summary": summary, "pairs": rows},
        {"timings": clock.laps, "jobs": args.jobs},
    )
    print(result.to_json(indent=None))
    return None, EXIT_OK
