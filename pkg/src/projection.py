"""
Projection map pi_x(w) = (1 - x) * sum w_k x^k and the smallest root of

    G(x) = sum (alpha_n - beta_n) x^n

in (0, 1). G and pi_x(alpha) - pi_x(beta) = (1 - x) G(x) have the same roots
there. For eventually periodic pairs G is a rational function with integer
coefficients, so its roots are isolated exactly on the numerator; for stream
pairs G is evaluated by certified truncation and the root is bracketed by
bisection on certified signs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy
from mpmath import ceil as mp_ceil
from mpmath import iv, mpf
from mpmath import log as mp_log

from src.admissibility import CriticalPair
from src.config import Settings, get_settings
from src.errors import DepthExhaustedError
from src.precision import Number, PrecisionReal, bits_for_digits, interval_precision
from src.utils.io import log
from src.words import EPWord, SymbolStream, Word

_X = sympy.Symbol("x")


# ---------------------------------------------------------
# Helpers
# ---------------------------------------------------------
def _real(x: Number, bits: int) -> PrecisionReal:
    return x if isinstance(x, PrecisionReal) else PrecisionReal.from_value(x, bits)


def _check_unit(x: PrecisionReal) -> None:
    if x.lower < 0 or x.upper >= 1:
        raise ValueError(f"x must lie in [0, 1), got {x!r}")


def truncation_depth(x, eps) -> int:
    """Smallest N with x**(N + 1) <= eps."""
    x, eps = mpf(x), mpf(eps)
    if x <= 0:
        return 0
    return max(int(mp_ceil(mp_log(eps) / mp_log(x))) - 1, 0)


def _power_bound(x: PrecisionReal, n: int) -> mpf:
    """Upper bound on x**n over the enclosure of x."""
    return (PrecisionReal.from_value(x.upper, x.bits) ** n).upper


def _poly_value(coeffs, x: PrecisionReal) -> PrecisionReal:
    """sum c_k x^k by Horner in interval arithmetic (integer c_k)."""
    with interval_precision(x.bits):
        acc = iv.mpf(0)
        for c in reversed(coeffs):
            acc = acc * x.interval + int(c)
    return PrecisionReal(acc, x.bits)


def _ep_power_series(w: EPWord, x: PrecisionReal) -> PrecisionReal:
    """sum w_k x^k in closed form: pre(x) + x^m per(x) / (1 - x^q)."""
    m, q = len(w.pre), len(w.per)
    head = _poly_value(w.pre, x)
    cycle = _poly_value(w.per, x) / (1 - x ** q)
    return head + (x ** m) * cycle


# ---------------------------------------------------------
# Projection
# ---------------------------------------------------------
def project(w: Word, x: Number, eps: float = 1e-30, settings: Settings | None = None) -> PrecisionReal:
    settings = settings or get_settings()
    x = _real(x, settings.precision_bits)
    _check_unit(x)
    if isinstance(w, EPWord):
        return (1 - x) * _ep_power_series(w, x)

    n = truncation_depth(x.upper, eps)
    if n + 1 > w.available_depth:
        raise DepthExhaustedError(w.name, n, w.available_depth)
    head = _poly_value(list(w.symbols(0, n + 1)), x)
    # (1 - x) sum_{k > n} w_k x^k lies in [0, x^(n+1)]
    return ((1 - x) * head).widen(_power_bound(x, n + 1))


def project_ifs(w: Word, x: Number, n: int, x0: Number, settings: Settings | None = None) -> PrecisionReal:
    """(g_{w_0} o ... o g_{w_n})(x0) with g_0(t) = x t and g_1(t) = x t + (1 - x)."""
    settings = settings or get_settings()
    x = _real(x, settings.precision_bits)
    if not (0 < x.lower and x.upper < 1):
        raise ValueError("project_ifs needs 0 < x < 1")
    t = _real(x0, x.bits)
    offset = 1 - x
    for k in range(n, -1, -1):
        t = x * t
        if w.symbol_at(k):
            t = t + offset
    return t


# ---------------------------------------------------------
# Difference function G
# ---------------------------------------------------------
class _StreamDifference:
    """Coefficients alpha_n - beta_n fetched on demand."""

    def __init__(self, pair: CriticalPair):
        self.pair = pair
        self.coeffs: list[int] = []

    def ensure(self, count: int) -> list[int]:
        if count > len(self.coeffs):
            for w in (self.pair.alpha, self.pair.beta):
                if isinstance(w, SymbolStream) and count > w.available_depth:
                    raise DepthExhaustedError(w.name, count - 1, w.available_depth)
            a = self.pair.alpha.symbols(len(self.coeffs), count)
            b = self.pair.beta.symbols(len(self.coeffs), count)
            self.coeffs.extend(int(p) - int(q) for p, q in zip(a, b))
        return self.coeffs[:count]

    def evaluate(self, x: PrecisionReal, eps: float) -> PrecisionReal:
        x_up = x.upper
        # tail sum_{n > N} x^n = x^(N+1) / (1 - x) <= eps
        n = truncation_depth(x_up, mpf(eps) * (1 - x_up))
        x_hi = PrecisionReal.from_value(x_up, x.bits)
        tail = PrecisionReal.from_value(_power_bound(x, n + 1), x.bits) / (1 - x_hi)
        return _poly_value(self.ensure(n + 1), x).widen(tail.upper)


def pair_difference(pair: CriticalPair, x: Number, eps: float = 1e-30,
                    settings: Settings | None = None) -> PrecisionReal:
    """G(x) = sum (alpha_n - beta_n) x^n with error at most eps (plus rounding)."""
    settings = settings or get_settings()
    x = _real(x, settings.precision_bits)
    _check_unit(x)
    if pair.is_eventually_periodic:
        return _ep_power_series(pair.alpha, x) - _ep_power_series(pair.beta, x)
    return _StreamDifference(pair).evaluate(x, eps)


@dataclass(frozen=True)
class ExactDifference:
    """G = numerator / denominator with integer polynomials (common factors cancelled)."""

    numerator: sympy.Poly
    denominator: sympy.Poly

    @property
    def root_polynomial(self) -> sympy.Poly:
        """Square-free numerator; its roots in (0, 1) are those of G, all simple."""
        return self.numerator.sqf_part()

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "numerator": str(self.numerator.as_expr()),
            "denominator": str(self.denominator.as_expr()),
            "root_polynomial": str(self.root_polynomial.as_expr()),
        }


def _sympy_series(w: EPWord):
    m, q = len(w.pre), len(w.per)
    head = sum(b * _X ** i for i, b in enumerate(w.pre))
    cycle = sum(b * _X ** j for j, b in enumerate(w.per))
    return head + _X ** m * cycle / (1 - _X ** q)


def exact_difference(pair: CriticalPair) -> ExactDifference:
    if not pair.is_eventually_periodic:
        raise ValueError("exact reduction needs two eventually periodic words")
    g = sympy.cancel(sympy.together(_sympy_series(pair.alpha) - _sympy_series(pair.beta)))
    num, den = sympy.fraction(g)
    return ExactDifference(sympy.Poly(num, _X, domain="ZZ"), sympy.Poly(den, _X, domain="ZZ"))


def _horner(coeffs: list[int], q: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * q + c
    return acc


# ---------------------------------------------------------
# Smallest root
# ---------------------------------------------------------
class RootStatus(enum.Enum):
    ROOT = "Root"
    NONE_FOUND = "NoneFound"


@dataclass
class RootResult:
    status: RootStatus
    r: PrecisionReal | None
    scan_ceiling: PrecisionReal
    residual: PrecisionReal
    warnings: list[str] = field(default_factory=list)
    method: str = ""
    exact: ExactDifference | None = None

    def to_dict(self, digits: int = 20) -> dict:
        out = {
            "status": self.status.value,
            "r": self.r,
            "scan_ceiling": self.scan_ceiling,
            "residual": self.residual,
            "warnings": self.warnings,
            "method": self.method,
        }
        if self.exact is not None:
            out["exact"] = self.exact.to_dict(digits)
        return out


def _grid(settings: Settings) -> list[Fraction]:
    start = Fraction(str(settings.grid_start))
    step = Fraction(str(settings.grid_step))
    ceiling = 1 - Fraction(str(settings.grid_delta))
    points = []
    k = 0
    while start + k * step < ceiling:
        points.append(start + k * step)
        k += 1
    points.append(ceiling)
    return points


def working_bits(tol: float, settings: Settings) -> int:
    digits = max(settings.precision_digits, math.ceil(-math.log10(tol)) + 10)
    return bits_for_digits(digits)


def _exact_root(pair: CriticalPair, tol: float, bits: int, settings: Settings) -> RootResult:
    exact = exact_difference(pair)
    coeffs = [int(c) for c in exact.root_polynomial.all_coeffs()]
    grid = _grid(settings)
    ceiling = PrecisionReal.from_value(grid[-1], bits)
    target_width = min(Fraction(str(tol)), Fraction(1, 2 ** (bits - 4)))

    prev_x, prev_v = None, None
    min_abs = None
    for q in grid:
        v = _horner(coeffs, q)
        if min_abs is None or abs(v) < min_abs:
            min_abs = abs(v)
        if v == 0:
            return _root_result(pair, q, q, bits, settings, "exact-rational", exact, tol)
        if prev_v is not None and (prev_v < 0) != (v < 0):
            lo, hi, v_lo = prev_x, q, prev_v
            while hi - lo > target_width:
                mid = (lo + hi) / 2
                v_mid = _horner(coeffs, mid)
                if v_mid == 0:
                    lo = hi = mid
                    break
                if (v_mid < 0) == (v_lo < 0):
                    lo, v_lo = mid, v_mid
                else:
                    hi = mid
            return _root_result(pair, lo, hi, bits, settings, "exact-rational", exact, tol)
        prev_x, prev_v = q, v

    log(f"No sign change of G below {float(ceiling)} for {pair}", "warn")
    # the square-free numerator has only simple roots, so no tangential root is missed
    residual = PrecisionReal.from_value(0, bits)
    return RootResult(RootStatus.NONE_FOUND, None, ceiling, residual,
                      [f"numerator has no root in (0, {float(ceiling)}]"], "exact-rational", exact)


def _stream_root(pair: CriticalPair, tol: float, bits: int, settings: Settings) -> RootResult:
    series = _StreamDifference(pair)
    grid = _grid(settings)
    ceiling = PrecisionReal.from_value(grid[-1], bits)
    scan_bits = 96
    scan_eps = 1e-20

    def sign_at(q: Fraction, prec: int, eps: float) -> tuple[int | None, PrecisionReal]:
        x = PrecisionReal.from_value(q, prec)
        g = series.evaluate(x, eps)
        return g.compare(0), g

    prev_x, prev_s = None, None
    min_abs = None
    bracket = None
    for q in grid:
        s, g = sign_at(q, scan_bits, scan_eps)
        if min_abs is None or abs(g.value) < min_abs:
            min_abs = abs(g.value)
        if s is None:
            # |G| below the scan resolution: treat the neighbourhood as the bracket
            bracket = (prev_x if prev_x is not None else q, q + Fraction(str(settings.grid_step)))
            break
        if prev_s is not None and s != prev_s:
            bracket = (prev_x, q)
            break
        prev_x, prev_s = q, s

    if bracket is None:
        warnings = [f"no sign change of G below {float(ceiling)}"]
        if min_abs is not None and min_abs < math.sqrt(tol):
            warnings.append(f"min |G| = {float(min_abs):.3g} < sqrt(tol): possible tangential root")
        residual = PrecisionReal.from_value(min_abs or 0, bits)
        return RootResult(RootStatus.NONE_FOUND, None, ceiling, residual, warnings, "certified-bisection")

    lo, hi = bracket
    eps = min(mpf(tol), mpf(2) ** (-bits)) / 1000
    s_lo, _ = sign_at(lo, bits, eps)
    target_width = min(Fraction(str(tol)), Fraction(1, 2 ** (bits - 8)))
    while hi - lo > target_width:
        mid = (lo + hi) / 2
        s_mid, _ = sign_at(mid, bits, eps)
        if s_mid is None:
            break
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return _root_result(pair, lo, hi, bits, settings, "certified-bisection", None, tol, eps)


def _root_result(pair, lo: Fraction, hi: Fraction, bits: int, settings: Settings,
                 method: str, exact: ExactDifference | None, tol: float,
                 eps: float = 1e-30) -> RootResult:
    r = PrecisionReal.from_interval(lo, hi, bits)
    # |pi_r(alpha) - pi_r(beta)| over the root enclosure
    residual = abs((1 - r) * pair_difference(pair, r, eps, settings))
    warnings = []
    if r.upper < 0.5:
        warnings.append("r < 1/2 implies a = 1/r > 2, outside 1 < a <= 2")
    log(f"Smallest root for {pair}: r ≈ {float(r.value):.12f} ({method})", "ok")
    return RootResult(RootStatus.ROOT, r, PrecisionReal.from_value(_grid(settings)[-1], bits), residual, warnings, method, exact)


def smallest_root(pair: CriticalPair, tol: float | None = None, settings: Settings | None = None,
                  bits: int | None = None) -> RootResult:
    """Smallest x in (0, 1) with pi_x(alpha) = pi_x(beta)."""
    settings = settings or get_settings()
    tol = tol if tol is not None else settings.tol
    bits = bits or working_bits(tol, settings)
    if pair.is_eventually_periodic:
        return _exact_root(pair, tol, bits, settings)
    return _stream_root(pair, tol, bits, settings)
