"""
PrecisionReal: a real number carried as a closed interval over mpmath's `iv`
context.

Every operation runs at the operand precision with outward rounding, so the
true value always lies in [lower, upper]. `value` and `error_bound` (midpoint
and radius, both exact) are the view written to reports.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from mpmath import iv, mp, mpf, nstr

Number = Union["PrecisionReal", int, Fraction, str, float, mpf]


def bits_for_digits(digits: int) -> int:
    return int(digits * 3.33) + 1


@contextmanager
def interval_precision(bits: int) -> Iterator[None]:
    """Run `iv` arithmetic at `bits` of working precision."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _exact_fraction(x: Number) -> Fraction:
    if isinstance(x, mpf):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    return Fraction(x)  # floats are dyadic and decimal strings are read exactly


@dataclass(frozen=True)
class PrecisionReal:
    interval: object  # iv.mpf
    bits: int

    # ---------- construction ----------
    @classmethod
    def from_value(cls, x: Number, bits: int) -> "PrecisionReal":
        """Enclose an exact input (int, Fraction, decimal string, float, mpf) at `bits`."""
        if isinstance(x, PrecisionReal):
            return x.with_bits(bits)
        if isinstance(x, mpf):
            return cls(iv.mpf(x), bits)
        q = _exact_fraction(x)
        with interval_precision(bits):
            if q.denominator == 1:
                return cls(iv.mpf(int(q.numerator)), bits)
            return cls(iv.mpf(int(q.numerator)) / int(q.denominator), bits)

    @classmethod
    def from_interval(cls, lo: Number, hi: Number, bits: int) -> "PrecisionReal":
        lower = cls.from_value(lo, bits).lower
        upper = cls.from_value(hi, bits).upper
        if lower > upper:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        return cls(iv.mpf((lower, upper)), bits)

    def with_bits(self, bits: int) -> "PrecisionReal":
        return PrecisionReal(self.interval, bits)

    def widen(self, radius: Number) -> "PrecisionReal":
        """The same enclosure grown by `radius` on both sides."""
        r = PrecisionReal.from_value(radius, self.bits).upper
        if r < 0:
            raise ValueError("radius must be nonnegative")
        with interval_precision(self.bits):
            return PrecisionReal(self.interval + iv.mpf((-r, r)), self.bits)

    def _coerce(self, other: Number) -> "PrecisionReal":
        if isinstance(other, PrecisionReal):
            return other
        return PrecisionReal.from_value(other, self.bits)

    def _binary(self, other: Number, op) -> "PrecisionReal":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        with interval_precision(bits):
            return PrecisionReal(op(self.interval, o.interval), bits)

    # ---------- arithmetic ----------
    def __add__(self, other: Number) -> "PrecisionReal":
        return self._binary(other, lambda s, t: s + t)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "PrecisionReal":
        return self._binary(other, lambda s, t: s - t)

    def __rsub__(self, other: Number) -> "PrecisionReal":
        return self._binary(other, lambda s, t: t - s)

    def __neg__(self) -> "PrecisionReal":
        with interval_precision(self.bits):
            return PrecisionReal(-self.interval, self.bits)

    def __abs__(self) -> "PrecisionReal":
        with interval_precision(self.bits):
            return PrecisionReal(abs(self.interval), self.bits)

    def __mul__(self, other: Number) -> "PrecisionReal":
        return self._binary(other, lambda s, t: s * t)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "PrecisionReal":
        o = self._coerce(other)
        if o.lower <= 0 <= o.upper:
            raise ZeroDivisionError("divisor interval contains zero")
        return self._binary(o, lambda s, t: s / t)

    def __rtruediv__(self, other: Number) -> "PrecisionReal":
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "PrecisionReal":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if n == 0:
            return PrecisionReal.from_value(1, self.bits)
        with interval_precision(self.bits):
            return PrecisionReal(self.interval ** n, self.bits)

    def log(self) -> "PrecisionReal":
        if self.lower <= 0:
            raise ValueError("log of an interval reaching zero")
        with interval_precision(self.bits):
            return PrecisionReal(iv.ln(self.interval), self.bits)

    def sqrt(self) -> "PrecisionReal":
        if self.lower < 0:
            raise ValueError("sqrt of an interval reaching below zero")
        with interval_precision(self.bits):
            return PrecisionReal(iv.sqrt(self.interval), self.bits)

    # ---------- views ----------
    @property
    def lower(self) -> mpf:
        return mp.make_mpf(self.interval._mpi_[0])

    @property
    def upper(self) -> mpf:
        return mp.make_mpf(self.interval._mpi_[1])

    @property
    def value(self) -> mpf:
        """Exact midpoint of the enclosure."""
        return mp.ldexp(mp.fadd(self.lower, self.upper, exact=True), -1)

    @property
    def error_bound(self) -> mpf:
        """Exact radius: the true value is within this of `value`."""
        return mp.ldexp(mp.fsub(self.upper, self.lower, exact=True), -1)

    # ---------- comparison ----------
    def compare(self, other: Number) -> int | None:
        """-1 / 0 / 1 when certified, None when the intervals overlap.

        0 is returned only when both are the same exact point.
        """
        o = self._coerce(other)
        if self.upper < o.lower:
            return -1
        if self.lower > o.upper:
            return 1
        if self.lower == self.upper == o.lower == o.upper:
            return 0
        return None

    def contains(self, x: Number) -> bool:
        """True when the enclosures of self and x meet."""
        o = x if isinstance(x, PrecisionReal) else PrecisionReal.from_value(x, self.bits + 32)
        return o.lower <= self.upper and self.lower <= o.upper

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"PrecisionReal({nstr(self.value, 15)} ± {nstr(self.error_bound, 3)})"

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "value": nstr(self.value, digits),
            "error_bound": nstr(self.error_bound, 3),
        }
