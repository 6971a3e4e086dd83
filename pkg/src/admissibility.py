"""
Admissibility of a candidate pair (alpha, beta) and membership in the address
spaces Omega(alpha, beta, -) and Omega(alpha, beta, +).

A pair is admissible when
  1. alpha starts 01 and beta starts 10, and
  2. no shift of alpha lies in (alpha, beta] and no shift of beta lies in [alpha, beta).

For eventually periodic words the shift orbit is finite, so the check is exact.
With a rule-defined stream only the first `depth` shifts are examined and the
report marks that condition as holding "to-depth".
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from src.config import Settings, get_settings
from src.words import EPWord, Order, Unknown, Word, format_word, lex_compare


class Sign(enum.Enum):
    MINUS = "minus"
    PLUS = "plus"


class Closure(enum.Enum):
    OPEN_CLOSED = "open_closed"   # (lo, hi]
    CLOSED_OPEN = "closed_open"   # [lo, hi)


class Verdict(enum.Enum):
    ADMISSIBLE = "Admissible"
    NOT_ADMISSIBLE = "NotAdmissible"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CriticalPair:
    alpha: Word
    beta: Word

    def __post_init__(self):
        if self.alpha == self.beta:
            raise ValueError("degenerate pair: alpha and beta are the same word")

    @property
    def is_eventually_periodic(self) -> bool:
        return isinstance(self.alpha, EPWord) and isinstance(self.beta, EPWord)

    def __str__(self) -> str:
        return f"({format_word(self.alpha)}, {format_word(self.beta)})"

    def to_dict(self, digits: int = 20) -> dict:
        return {"alpha": format_word(self.alpha), "beta": format_word(self.beta)}


@dataclass(frozen=True)
class Witness:
    word: str                 # "alpha" or "beta"
    shift: int | None         # None for a first-symbol failure
    condition: str


@dataclass
class AdmissibilityReport:
    verdict: Verdict
    witness: Witness | None = None
    checked_depth: int = 0
    # condition name -> "exact" | "to-depth" | "unresolved"
    scope: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict is Verdict.NOT_ADMISSIBLE and self.witness is None:
            raise ValueError("NotAdmissible requires a witness")


# ---------------------------------------------------------
# Interval membership
# ---------------------------------------------------------
def interval_contains(
    w: Word, lo: Word, hi: Word, closure: Closure, depth: int | None = None
) -> bool | Unknown:
    """Membership of w in (lo, hi] or [lo, hi) under the lexicographic order."""
    c_lo = lex_compare(w, lo, depth)
    c_hi = lex_compare(w, hi, depth)

    if closure is Closure.OPEN_CLOSED:
        excluded_lo = c_lo in (Order.LT, Order.EQ)
        excluded_hi = c_hi is Order.GT
    else:
        excluded_lo = c_lo is Order.LT
        excluded_hi = c_hi in (Order.GT, Order.EQ)

    if excluded_lo or excluded_hi:
        return False
    if isinstance(c_lo, Unknown):
        return c_lo
    if isinstance(c_hi, Unknown):
        return c_hi
    return True


def forbidden_closure(sign: Sign) -> Closure:
    return Closure.OPEN_CLOSED if sign is Sign.MINUS else Closure.CLOSED_OPEN


def _shift_range(w: Word, depth: int) -> range:
    if isinstance(w, EPWord):
        return range(min(depth, w.cycle_bound))
    return range(depth)


# ---------------------------------------------------------
# Admissibility
# ---------------------------------------------------------
def _first_symbols_ok(pair: CriticalPair) -> Witness | None:
    expected = (("alpha", pair.alpha, (0, 1)), ("beta", pair.beta, (1, 0)))
    for name, w, (s0, s1) in expected:
        if (w.symbol_at(0), w.symbol_at(1)) != (s0, s1):
            return Witness(name, None, f"{name} must begin with {s0}{s1}")
    return None


def check_admissible(
    pair: CriticalPair, depth: int | None = None, settings: Settings | None = None
) -> AdmissibilityReport:
    settings = settings or get_settings()
    stream_depth = depth if depth is not None else settings.stream_depth

    bad_start = _first_symbols_ok(pair)
    if bad_start is not None:
        return AdmissibilityReport(Verdict.NOT_ADMISSIBLE, bad_start, 0, {"first_symbols": "exact"})

    report = AdmissibilityReport(Verdict.ADMISSIBLE, scope={"first_symbols": "exact"})
    conditions = (
        ("alpha", pair.alpha, Closure.OPEN_CLOSED, "S^n alpha in (alpha, beta]"),
        ("beta", pair.beta, Closure.CLOSED_OPEN, "S^n beta in [alpha, beta)"),
    )
    unresolved = False
    for name, w, closure, condition in conditions:
        exact = isinstance(w, EPWord)
        # S^0 alpha = alpha and S^0 beta = beta never lie in their intervals
        shifts = range(1, w.cycle_bound) if exact else range(1, stream_depth)
        scope = "exact" if exact else "to-depth"
        for n in shifts:
            inside = interval_contains(w.shift(n), pair.alpha, pair.beta, closure, stream_depth)
            if isinstance(inside, Unknown):
                scope = "unresolved"
                unresolved = True
                continue
            if inside:
                report.verdict = Verdict.NOT_ADMISSIBLE
                report.witness = Witness(name, n, condition)
                report.checked_depth = n + 1
                report.scope[name] = "exact"
                return report
        report.scope[name] = scope
        report.checked_depth = max(report.checked_depth, shifts.stop)

    if unresolved:
        report.verdict = Verdict.UNKNOWN
        report.notes.append(
            f"some comparisons did not resolve within {stream_depth} symbols"
        )
    elif "to-depth" in report.scope.values():
        report.notes.append(
            f"stream conditions verified for the first {stream_depth} shifts, "
            f"each comparison resolved within {stream_depth} symbols"
        )
    return report


# ---------------------------------------------------------
# Address spaces
# ---------------------------------------------------------
def in_address_space(
    w: Word, pair: CriticalPair, sign: Sign, depth: int, compare_depth: int | None = None
) -> bool | Unknown:
    """True iff no shift S^n w with n < depth enters the forbidden interval."""
    closure = forbidden_closure(sign)
    pending: Unknown | None = None
    for n in _shift_range(w, depth):
        inside = interval_contains(w.shift(n), pair.alpha, pair.beta, closure, compare_depth)
        if isinstance(inside, Unknown):
            if pending is None:
                pending = inside
            continue
        if inside:
            return False
    return pending if pending is not None else True
