"""Argument helpers and exit codes shared by the subcommands."""

from __future__ import annotations

import argparse

from src.admissibility import CriticalPair, Verdict
from src.config import Settings
from src.words import parse_word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_NOT_ADMISSIBLE = 3
EXIT_UNKNOWN = 4
EXIT_MISMATCH = 5

VERDICT_EXIT = {
    Verdict.ADMISSIBLE: EXIT_OK,
    Verdict.NOT_ADMISSIBLE: EXIT_NOT_ADMISSIBLE,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}


def add_pair_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("alpha", help='word literal for alpha, e.g. "01(10)" or "@primes"')
    parser.add_argument("beta", help='word literal for beta, e.g. "1(0)"')


def read_pair(args: argparse.Namespace, settings: Settings) -> CriticalPair:
    alpha = parse_word(args.alpha, settings.sieve_limit)
    beta = parse_word(args.beta, settings.sieve_limit)
    return CriticalPair(alpha, beta)


def pair_inputs(args: argparse.Namespace, settings: Settings, **extra) -> dict:
    """Echo of the arguments plus the numeric knobs in effect."""
    return {
        "alpha": args.alpha,
        "beta": args.beta,
        "precision_digits": settings.precision_digits,
        "tol": settings.tol,
        **extra,
    }
