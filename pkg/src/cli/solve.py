"""
solve ALPHA BETA [--show-poly]

Smallest root r of pi_x(alpha) = pi_x(beta) and the map parameters a = 1/r,
p = pi_r(alpha). Exit 2 when no root is found below the scan ceiling.
"""

from __future__ import annotations

from mpmath import mpf

from src.admissibility import Verdict, check_admissible
from src.cli.args import EXIT_NOT_ADMISSIBLE, EXIT_OK, EXIT_SOLVER, add_pair_arguments, pair_inputs, read_pair
from src.cli.claims import annotate
from src.projection import RootStatus, exact_difference, project, smallest_root
from src.utils.io import RunResult, log
from src.utils.time import Stopwatch


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("solve", parents=list(parents), help="solve for r, a = 1/r and p")
    add_pair_arguments(parser)
    parser.add_argument("--show-poly", action="store_true",
                        help="include the exact numerator/denominator of G (periodic pairs)")
    parser.set_defaults(func=run)


def run(args, settings):
    clock = Stopwatch()
    pair = read_pair(args, settings)
    inputs = pair_inputs(args, settings)

    admissibility = check_admissible(pair, settings=settings)
    clock.lap("check")
    if admissibility.verdict is Verdict.NOT_ADMISSIBLE:
        log(f"{pair} is not admissible ({admissibility.witness.condition})", "error")
        return RunResult("solve", inputs, {"admissibility": admissibility}), EXIT_NOT_ADMISSIBLE

    root = smallest_root(pair, settings.tol, settings)
    clock.lap("root")
    outputs = {"root": root, "admissibility_verdict": admissibility.verdict.value}
    diagnostics = {"warnings": list(root.warnings), "method": root.method}

    if root.status is RootStatus.NONE_FOUND:
        log(f"No root found below {float(root.scan_ceiling)}", "error")
        diagnostics["timings"] = clock.laps
        return RunResult("solve", inputs, outputs, diagnostics), EXIT_SOLVER

    eps = mpf(2) ** (-root.r.bits)
    a = 1 / root.r
    p = project(pair.alpha, root.r, eps, settings)
    p_beta = project(pair.beta, root.r, eps, settings)
    clock.lap("projection")
    if not p.contains(p_beta):
        diagnostics["warnings"].append("pi_r(alpha) and pi_r(beta) differ beyond the tracked error")

    outputs.update({"r": root.r, "a": a, "p": p, "p_beta": p_beta})
    if args.show_poly and pair.is_eventually_periodic:
        outputs["exact"] = root.exact or exact_difference(pair)
    published = annotate(pair, {"a": a, "p": p})
    if published:
        outputs["published"] = published

    log(f"{pair}: r ≈ {float(root.r):.12f}, a ≈ {float(a):.12f}, p ≈ {float(p):.12f}", "ok")
    diagnostics["timings"] = clock.laps
    diagnostics["bits"] = root.r.bits
    return RunResult("solve", inputs, outputs, diagnostics), EXIT_OK
