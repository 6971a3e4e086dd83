"""
Uniform overlapping maps

    f(x) = a x            on I_0
    f(x) = a x + (1 - a)  on I_1

with I_0 = [0, p], I_1 = (p, 1] for sign "minus" and I_0 = [0, p), I_1 = [p, 1]
for sign "plus".

Orbits are iterated in interval arithmetic. The map expands errors by a per step,
so every branch decision is certified: when an interval straddles p the whole
orbit is recomputed with twice the bits, up to the configured ceiling. The
point p itself is decided by the sign convention, never by a tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional

from mpmath import mpf

from src.admissibility import AdmissibilityReport, CriticalPair, Sign, Verdict, check_admissible
from src.config import Settings, get_settings
from src.errors import BranchUndecidableError, ParameterRangeError, PrecisionCeilingError, RootNotFoundError
from src.precision import Number, PrecisionReal
from src.projection import RootResult, RootStatus, project, smallest_root, working_bits
from src.utils.io import log
from src.words import EPWord, FiniteWord, Word, get_stream, parse_word

# (step, symbols decided so far, iterate, params) -> True when the iterate is exactly p
TieResolver = Callable[[int, tuple, PrecisionReal, "OverlapParams"], bool]


# ---------------------------------------------------------
# Parameters
# ---------------------------------------------------------
def _real(x: Number, bits: int) -> PrecisionReal:
    return x if isinstance(x, PrecisionReal) else PrecisionReal.from_value(x, bits)


@dataclass(frozen=True)
class OverlapParams:
    a: PrecisionReal
    p: PrecisionReal
    sign: Sign
    # exact inputs, kept so that the parameters can be re-rounded at more bits
    source: Optional[tuple] = field(default=None, compare=False, repr=False)

    @classmethod
    def of(cls, a: Number, p: Number, sign: Sign | str, bits: int | None = None,
           settings: Settings | None = None, validate: bool = True) -> "OverlapParams":
        settings = settings or get_settings()
        bits = bits or settings.precision_bits
        sign = sign if isinstance(sign, Sign) else Sign(sign)
        exact = not isinstance(a, PrecisionReal) and not isinstance(p, PrecisionReal)
        params = cls(_real(a, bits), _real(p, bits), sign, (a, p) if exact else None)
        if validate:
            params.validate()
        return params

    @property
    def bits(self) -> int:
        return max(self.a.bits, self.p.bits)

    def violations(self) -> list[str]:
        """Certified violations of 1 < a <= 2 and 1 - 1/a <= p <= 1/a."""
        found = []
        if self.a.compare(1) in (-1, 0):
            found.append("a must exceed 1")
        if self.a.compare(2) == 1:
            found.append("a must be at most 2")
        if self.a.compare(0) == 1:
            inv = 1 / self.a
            if self.p.compare(1 - inv) == -1:
                found.append("p must be at least 1 - 1/a")
            if self.p.compare(inv) == 1:
                found.append("p must be at most 1/a")
        return found

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise ParameterRangeError(f"invalid map parameters {self}: " + "; ".join(problems))

    def overlap_interval(self) -> tuple[PrecisionReal, PrecisionReal]:
        """f(I_0) and f(I_1) share [a p + 1 - a, a p]."""
        ap = self.a * self.p
        return ap + (1 - self.a), ap

    def at_bits(self, bits: int) -> "OverlapParams":
        if self.source is not None:
            a, p = self.source
            return OverlapParams(_real(a, bits), _real(p, bits), self.sign, self.source)
        return replace(self, a=self.a.with_bits(bits), p=self.p.with_bits(bits))

    def with_sign(self, sign: Sign) -> "OverlapParams":
        return replace(self, sign=sign)

    def __str__(self) -> str:
        return f"f(a={float(self.a):.10g}, p={float(self.p):.10g}, {self.sign.value})"

    def to_dict(self, digits: int = 20) -> dict:
        return {"a": self.a, "p": self.p, "sign": self.sign.value}


# ---------------------------------------------------------
# One step
# ---------------------------------------------------------
def _tie_symbol(params: OverlapParams) -> int:
    return 0 if params.sign is Sign.MINUS else 1


def branch(params: OverlapParams, x: PrecisionReal, critical: bool = False, step: int = 0) -> int:
    """0 for I_0, 1 for I_1. `critical` marks x as exactly p."""
    if critical or x is params.p:
        return _tie_symbol(params)
    c = x.compare(params.p)
    if c is None:
        raise BranchUndecidableError(step, x.bits)
    if c == 0:
        return _tie_symbol(params)
    return 0 if c < 0 else 1


def _apply(params: OverlapParams, x: PrecisionReal, symbol: int) -> PrecisionReal:
    y = params.a * x
    return y + (1 - params.a) if symbol else y


def eval_map(params: OverlapParams, x: Number, critical: bool = False) -> PrecisionReal:
    x = _real(x, params.bits)
    if x.upper < 0 or x.lower > 1:
        raise ValueError(f"x = {x!r} lies outside [0, 1]")
    return _apply(params, x, branch(params, x, critical))


# ---------------------------------------------------------
# Orbits with adaptive precision
# ---------------------------------------------------------
def _trace(params: OverlapParams, x0: PrecisionReal, count: int, decide_last: bool,
           critical: bool, resolver: TieResolver | None) -> tuple[list[PrecisionReal], list[int]]:
    values: list[PrecisionReal] = []
    symbols: list[int] = []
    x, at_p = x0, critical
    for k in range(count):
        values.append(x)
        if k == count - 1 and not decide_last:
            break
        try:
            s = branch(params, x, at_p, k)
        except BranchUndecidableError:
            if resolver is None or not resolver(k, tuple(symbols), x, params):
                raise
            # certified return to p: continue from p itself
            x, at_p = params.p, True
            values[-1] = x
            s = _tie_symbol(params)
        symbols.append(s)
        x = _apply(params, x, s)
        at_p = False
    return values, symbols


def required_bits(a: float, length: int, floor: int = 0) -> int:
    """About log2(a) bits are lost per step; keep 64 guard bits on top."""
    return max(floor, int(length * math.log2(max(a, 1.0))) + 64)


def _adaptive(params: OverlapParams, x0: Number, count: int, decide_last: bool,
              critical: bool | None, resolver: TieResolver | None, settings: Settings,
              refine: Callable[[int], tuple[OverlapParams, PrecisionReal]] | None = None):
    if critical is None:
        critical = x0 is params.p
    bits = required_bits(float(params.a.upper), count, params.bits)

    def default_refine(b: int):
        p = params.at_bits(b)
        start = p.p if critical else (x0.with_bits(b) if isinstance(x0, PrecisionReal) else _real(x0, b))
        return p, start

    refine = refine or default_refine
    current, start = params, (params.p if critical else _real(x0, params.bits))
    while True:
        if current.bits != bits:
            current, start = refine(bits)
        try:
            return _trace(current, start, count, decide_last, critical, resolver) + (bits,)
        except BranchUndecidableError as e:
            if bits * 2 > settings.precision_ceiling_bits:
                raise PrecisionCeilingError(
                    f"branch at step {e.step} still undecidable at {bits} bits "
                    f"(ceiling {settings.precision_ceiling_bits})"
                ) from e
            log(f"Branch undecidable at step {e.step} with {bits} bits, retrying with {bits * 2}", "warn")
            bits *= 2


def orbit(params: OverlapParams, x0: Number, n: int, settings: Settings | None = None,
          tie_resolver: TieResolver | None = None, critical: bool | None = None) -> list[PrecisionReal]:
    """[x0, f(x0), ..., f^n(x0)]."""
    settings = settings or get_settings()
    if n < 0:
        raise ValueError("n must be nonnegative")
    values, _, _ = _adaptive(params, x0, n + 1, False, critical, tie_resolver, settings)
    return values


def itinerary(params: OverlapParams, x0: Number, length: int, settings: Settings | None = None,
              tie_resolver: TieResolver | None = None, critical: bool | None = None) -> FiniteWord:
    """First `length` symbols of the itinerary of x0, each certified."""
    settings = settings or get_settings()
    if length <= 0:
        return FiniteWord(())
    _, symbols, _ = _adaptive(params, x0, length, True, critical, tie_resolver, settings)
    return FiniteWord(tuple(symbols))


def projection_tie_resolver(step: int, symbols: tuple, x: PrecisionReal, params: OverlapParams) -> bool:
    """Accept a return to p after u = symbols when p is consistent with pi_{1/a}(u^inf)."""
    if not symbols or not params.p.contains(x):
        return False
    r = 1 / params.a
    fixed = project(EPWord((), symbols), r)
    return params.p.contains(fixed)


def critical_itineraries(a: Number, p: Number, length: int, settings: Settings | None = None
                         ) -> tuple[FiniteWord, FiniteWord]:
    """Prefixes of tau_- and tau_+, the itineraries of p under both sign conventions."""
    settings = settings or get_settings()
    minus = OverlapParams.of(a, p, Sign.MINUS, settings=settings)
    plus = minus.with_sign(Sign.PLUS)
    return tuple(
        itinerary(params, params.p, length, settings, projection_tie_resolver, critical=True)
        for params in (minus, plus)
    )


# ---------------------------------------------------------
# Round trip and reconstruction
# ---------------------------------------------------------
class VerifyStatus(enum.Enum):
    VERIFIED = "Verified"
    MISMATCH = "Mismatch"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class RoundTripVerdict:
    status: VerifyStatus
    depth: int
    index: int | None = None
    word: str | None = None     # "alpha" or "beta"
    reason: str = ""
    bits: int = 0

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "status": self.status.value,
            "depth": self.depth,
            "index": self.index,
            "word": self.word,
            "reason": self.reason,
            "bits": self.bits,
        }


def _word_tie_resolver(pair: CriticalPair, word: Word) -> TieResolver:
    """f^n(p) = pi_r(S^n w) equals p exactly when S^n w is alpha or beta."""

    def resolve(step: int, symbols: tuple, x: PrecisionReal, params: OverlapParams) -> bool:
        tail = word.shift(step)
        for target in (pair.alpha, pair.beta):
            if isinstance(tail, EPWord) and isinstance(target, EPWord) and tail == target:
                return True
        return False

    return resolve


def _check_side(pair: CriticalPair, name: str, word: Word, params: OverlapParams, r: PrecisionReal,
                length: int, settings: Settings, eps) -> RoundTripVerdict | None:
    values, symbols = _trace(params, params.p, length, True, True, _word_tie_resolver(pair, word))
    expected = word.symbols(0, length)
    for n, (got, want) in enumerate(zip(symbols, expected)):
        if got != want:
            return RoundTripVerdict(VerifyStatus.MISMATCH, n, n, name, f"symbol {got} != {want}", params.bits)
        image = project(word.shift(n), r, eps, settings)
        if not values[n].contains(image):
            return RoundTripVerdict(
                VerifyStatus.MISMATCH, n, n, name,
                f"|f^{n}(p) - pi_r(S^{n} {name})| exceeds the error bounds", params.bits,
            )
    return None


def round_trip_verify(pair: CriticalPair, r: PrecisionReal, p: PrecisionReal, length: int,
                      settings: Settings | None = None,
                      refine: Callable[[int], tuple[PrecisionReal, PrecisionReal]] | None = None
                      ) -> RoundTripVerdict:
    """Recompute both critical itineraries of f(1/r, p, ±) and compare with the pair.

    At each n < length the symbol must match and f^n(p) must agree with
    pi_r(S^n w) within the tracked error. `refine(bits)` supplies r and p at
    more bits when a branch cannot be certified.
    """
    settings = settings or get_settings()
    bits = max(r.bits, p.bits)
    while True:
        a = 1 / r
        minus = OverlapParams.of(a, p, Sign.MINUS, bits=bits, validate=False)
        plus = minus.with_sign(Sign.PLUS)
        eps = mpf(2) ** (-bits)
        try:
            for name, word, params in (("alpha", pair.alpha, minus), ("beta", pair.beta, plus)):
                found = _check_side(pair, name, word, params, r, length, settings, eps)
                if found is not None:
                    return found
            return RoundTripVerdict(VerifyStatus.VERIFIED, length, bits=bits)
        except BranchUndecidableError as e:
            if refine is None or bits * 2 > settings.precision_ceiling_bits:
                return RoundTripVerdict(
                    VerifyStatus.INCONCLUSIVE, e.step, e.step, None,
                    f"branch at step {e.step} not certified with {bits} bits", bits,
                )
            bits *= 2
            log(f"Round trip needs more precision, recomputing r and p with {bits} bits", "warn")
            r, p = refine(bits)


@dataclass
class ReconstructionReport:
    params_minus: OverlapParams
    params_plus: OverlapParams
    r: PrecisionReal
    a: PrecisionReal
    p: PrecisionReal
    p_beta: PrecisionReal
    verified_depth: int
    verdict: RoundTripVerdict
    root: RootResult
    admissibility: AdmissibilityReport
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    bits: int = 0

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "r": self.r,
            "a": self.a,
            "p": self.p,
            "p_beta": self.p_beta,
            "verified_depth": self.verified_depth,
            "verdict": self.verdict,
            "root": self.root,
            "admissibility": {
                "verdict": self.admissibility.verdict.value,
                "scope": self.admissibility.scope,
            },
            "violations": self.violations,
            "warnings": self.warnings,
            "bits": self.bits,
        }


def _parameters_at(pair: CriticalPair, tol: float, bits: int, settings: Settings):
    root = smallest_root(pair, tol, settings, bits=bits)
    if root.status is RootStatus.NONE_FOUND:
        raise RootNotFoundError(f"no root of G in (0, {float(root.scan_ceiling)}] for {pair}", result=root)
    eps = mpf(2) ** (-bits)
    p = project(pair.alpha, root.r, eps, settings)
    p_beta = project(pair.beta, root.r, eps, settings)
    return root, p, p_beta


def reconstruct(pair: CriticalPair, tol: float | None = None, verify_len: int = 64,
                settings: Settings | None = None) -> ReconstructionReport:
    """a = 1/r and p = pi_r(alpha) from the smallest root, then a round-trip check."""
    settings = settings or get_settings()
    tol = tol if tol is not None else settings.tol
    admissibility = check_admissible(pair, settings=settings)
    warnings = []
    if admissibility.verdict is not Verdict.ADMISSIBLE:
        warnings.append(f"pair is {admissibility.verdict.value}; reconstruction may be meaningless")

    base_bits = working_bits(tol, settings)
    root, p, p_beta = _parameters_at(pair, tol, base_bits, settings)
    bits = required_bits(float(1 / root.r.lower), verify_len, base_bits)
    if bits != base_bits:
        root, p, p_beta = _parameters_at(pair, tol, bits, settings)
    log(f"Reconstructing {pair} with {bits} bits", "info")

    def refine(b: int):
        nonlocal root, p, p_beta, bits
        root, p, p_beta = _parameters_at(pair, tol, b, settings)
        bits = b
        return root.r, p

    verdict = round_trip_verify(pair, root.r, p, verify_len, settings, refine)

    a = 1 / root.r
    minus = OverlapParams.of(a, p, Sign.MINUS, bits=bits, validate=False)
    if not p.contains(p_beta):
        warnings.append("pi_r(alpha) and pi_r(beta) differ by more than the tracked error")
    warnings.extend(root.warnings)
    if root.r.compare(Fraction(1, 2)) == -1:
        warnings.append("r < 1/2: reconstructed slope exceeds 2")
    if p.compare(1 - root.r) == -1 or p.compare(root.r) == 1:
        warnings.append("p lies outside [1 - r, r]")

    verified = verdict.depth if verdict.status is VerifyStatus.VERIFIED else (verdict.index or 0)
    status = "ok" if verdict.status is VerifyStatus.VERIFIED else "warn"
    log(f"{pair}: a ≈ {float(a):.12g}, p ≈ {float(p):.12g}, {verdict.status.value}", status)
    return ReconstructionReport(
        params_minus=minus,
        params_plus=minus.with_sign(Sign.PLUS),
        r=root.r,
        a=a,
        p=p,
        p_beta=p_beta,
        verified_depth=verified,
        verdict=verdict,
        root=root,
        admissibility=admissibility,
        violations=minus.violations(),
        warnings=warnings,
        bits=bits,
    )


# ---------------------------------------------------------
# Primality from the prime pair
# ---------------------------------------------------------
@dataclass(frozen=True)
class PrimalityRow:
    n: int
    indicator: bool
    iterate: PrecisionReal
    bits: int


def prime_pair(settings: Settings | None = None) -> CriticalPair:
    settings = settings or get_settings()
    return CriticalPair(get_stream("primes", settings.sieve_limit), parse_word("1(0)"))


def primality_rows(nmax: int, settings: Settings | None = None) -> list[PrimalityRow]:
    """f^(n-1)(p) > p for n = 2..nmax, with (a, p) reconstructed from the prime pair."""
    settings = settings or get_settings()
    if nmax < 2:
        raise ValueError("nmax must be at least 2")
    pair = prime_pair(settings)
    tol = settings.tol

    def refine(bits: int):
        root, p, _ = _parameters_at(pair, tol, bits, settings)
        return OverlapParams.of(1 / root.r, p, Sign.MINUS, bits=bits, validate=False), p

    params, _ = refine(working_bits(tol, settings))
    values, symbols, bits = _adaptive(params, params.p, nmax, True, True, None, settings, refine)
    return [
        PrimalityRow(n, symbols[n - 1] == 1, values[n - 1], bits)
        for n in range(2, nmax + 1)
    ]


def primality_indicator(nmax: int, settings: Settings | None = None) -> list[bool]:
    return [row.indicator for row in primality_rows(nmax, settings)]
