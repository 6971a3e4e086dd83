"""
reconstruct ALPHA BETA [--verify-len N]

Rebuild f(a, p, ±) from the pair and check that its critical itineraries
reproduce alpha and beta. Exit 2 on solver failure, 5 on Mismatch,
4 when the round trip is Inconclusive.
"""

from __future__ import annotations

from src.cli.args import EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN, add_pair_arguments, pair_inputs, read_pair
from src.cli.claims import annotate
from src.dynamics import VerifyStatus, reconstruct
from src.utils.io import RunResult
from src.utils.time import Stopwatch

STATUS_EXIT = {
    VerifyStatus.VERIFIED: EXIT_OK,
    VerifyStatus.MISMATCH: EXIT_MISMATCH,
    VerifyStatus.INCONCLUSIVE: EXIT_UNKNOWN,
}


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("reconstruct", parents=list(parents), help="reconstruct (a, p) and verify the round trip")
    add_pair_arguments(parser)
    parser.add_argument("--verify-len", type=int, default=64, help="symbols to verify (default 64)")
    parser.set_defaults(func=run)


def run(args, settings):
    clock = Stopwatch()
    pair = read_pair(args, settings)
    report = reconstruct(pair, settings.tol, args.verify_len, settings)
    clock.lap("reconstruct")

    outputs = {"report": report}
    published = annotate(pair, {"a": report.a, "p": report.p})
    if published:
        outputs["published"] = published
    result = RunResult(
        "reconstruct",
        pair_inputs(args, settings, verify_len=args.verify_len),
        outputs,
        {"warnings": report.warnings, "bits": report.bits, "timings": clock.laps},
    )
    return result, STATUS_EXIT[report.verdict.status]
