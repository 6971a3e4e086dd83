"""
Infinite binary words.

Two representations share one interface:
- EPWord: preperiod followed by a repeating period, kept in canonical form
  (primitive period, minimal preperiod) so that equality is structural
- SymbolStream: a rule-defined word with an explicit available depth; queries
  past that depth fail loudly

Word literals: "01(10)" is 01 followed by 10 repeated, "(01)" is purely
periodic, "011" is shorthand for "011(0)", and "@primes" names a built-in stream.
"""

from __future__ import annotations

import enum
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence, Union

import numpy as np

from src.errors import DepthExhaustedError, WordParseError
from src.precision import PrecisionReal


# ---------------------------------------------------------
# Finite words
# ---------------------------------------------------------
@dataclass(frozen=True)
class FiniteWord:
    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise WordParseError(f"non-binary symbol in {self.bits!r}")

    @classmethod
    def of(cls, text: str | Sequence[int]) -> "FiniteWord":
        if isinstance(text, str):
            if not set(text) <= {"0", "1"}:
                raise WordParseError(f"non-binary character in {text!r}")
            return cls(tuple(int(c) for c in text))
        return cls(tuple(int(b) for b in text))

    @property
    def length(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __iter__(self):
        return iter(self.bits)

    def __add__(self, other: "FiniteWord") -> "FiniteWord":
        return FiniteWord(self.bits + tuple(other))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


# ---------------------------------------------------------
# Eventually periodic words
# ---------------------------------------------------------
def _primitive_root(period: tuple[int, ...]) -> tuple[int, ...]:
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period[:d] * (n // d) == period:
            return period[:d]
    return period


@dataclass(frozen=True)
class EPWord:
    """preperiod · period^∞, canonicalized on construction."""

    pre: tuple[int, ...]
    per: tuple[int, ...]

    def __post_init__(self):
        pre, per = tuple(self.pre), tuple(self.per)
        if not per:
            raise WordParseError("empty period")
        if any(b not in (0, 1) for b in pre + per):
            raise WordParseError("non-binary symbol in word")
        per = _primitive_root(per)
        # absorb trailing preperiod symbols into a rotated period
        while pre and pre[-1] == per[-1]:
            per = (per[-1],) + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def of(cls, pre: str | Sequence[int], per: str | Sequence[int]) -> "EPWord":
        return cls(tuple(FiniteWord.of(pre)), tuple(FiniteWord.of(per)))

    @property
    def cycle_bound(self) -> int:
        """Shifts S^n for n >= this bound repeat earlier ones."""
        return len(self.pre) + len(self.per)

    def symbol_at(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative index")
        if n < len(self.pre):
            return self.pre[n]
        return self.per[(n - len(self.pre)) % len(self.per)]

    def symbols(self, start: int, stop: int) -> list[int]:
        return [self.symbol_at(i) for i in range(start, stop)]

    def shift(self, n: int) -> "EPWord":
        if n <= len(self.pre):
            return EPWord(self.pre[n:], self.per)
        k = (n - len(self.pre)) % len(self.per)
        return EPWord((), self.per[k:] + self.per[:k])

    def __str__(self) -> str:
        return format_word(self)


# ---------------------------------------------------------
# Rule-defined streams
# ---------------------------------------------------------
@dataclass(frozen=True)
class SymbolStream:
    """A word given by an index rule, valid for indices below `available_depth`."""

    name: str
    rule: Callable[[int, int], Sequence[int]] = field(compare=False, repr=False)
    available_depth: int
    offset: int = 0

    def _check(self, stop: int) -> None:
        if stop > self.available_depth:
            raise DepthExhaustedError(self.name, stop - 1, self.available_depth)

    def symbol_at(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative index")
        self._check(n + 1)
        return int(self.rule(self.offset + n, self.offset + n + 1)[0])

    def symbols(self, start: int, stop: int) -> list[int]:
        self._check(stop)
        return [int(b) for b in self.rule(self.offset + start, self.offset + stop)]

    def shift(self, n: int) -> "SymbolStream":
        return SymbolStream(self.name, self.rule, max(self.available_depth - n, 0), self.offset + n)

    def __str__(self) -> str:
        return format_word(self)


Word = Union[EPWord, SymbolStream]


# ---------------------------------------------------------
# Built-in streams
# ---------------------------------------------------------
class _PrimeSieve:
    """Lazily built boolean sieve; symbol n is 1 iff n + 1 is prime."""

    def __init__(self, limit: int):
        self.limit = limit
        self._lock = threading.Lock()
        self._flags: np.ndarray | None = None

    def flags(self) -> np.ndarray:
        with self._lock:
            if self._flags is None:
                n = self.limit + 2
                is_prime = np.ones(n, dtype=bool)
                is_prime[:2] = False
                for k in range(2, int(n ** 0.5) + 1):
                    if is_prime[k]:
                        is_prime[k * k :: k] = False
                self._flags = is_prime
            return self._flags

    def __call__(self, start: int, stop: int) -> np.ndarray:
        return self.flags()[start + 1 : stop + 1].astype(np.int8)


_STREAM_FACTORIES: dict[str, Callable[[int], SymbolStream]] = {}
_stream_cache: dict[tuple[str, int], SymbolStream] = {}


def register_stream(name: str, factory: Callable[[int], SymbolStream]) -> None:
    """Add a named stream; the factory receives the configured depth limit."""
    _STREAM_FACTORIES[name] = factory


def _primes_stream(limit: int) -> SymbolStream:
    return SymbolStream("primes", _PrimeSieve(limit), limit)


register_stream("primes", _primes_stream)


def get_stream(name: str, limit: int | None = None) -> SymbolStream:
    if name not in _STREAM_FACTORIES:
        known = ", ".join(sorted(_STREAM_FACTORIES))
        raise WordParseError(f"unknown stream @{name} (known: {known})")
    if limit is None:
        from src.config import get_settings

        limit = get_settings().sieve_limit
    key = (name, limit)
    if key not in _stream_cache:
        _stream_cache[key] = _STREAM_FACTORIES[name](limit)
    return _stream_cache[key]


def is_prime(n: int) -> bool:
    """Sieve-backed primality, used as the oracle for the map-based tester."""
    stream = get_stream("primes")
    if n < 2:
        return False
    return stream.symbol_at(n - 1) == 1


# ---------------------------------------------------------
# Parsing and formatting
# ---------------------------------------------------------
_EP_RE = re.compile(r"^([01]*)\(([01]*)\)$")
_BITS_RE = re.compile(r"^[01]+$")
_STREAM_RE = re.compile(r"^@([A-Za-z][A-Za-z0-9_-]*)$")


def parse_word(text: str, stream_limit: int | None = None) -> Word:
    """Parse a word literal into a canonical Word."""
    text = text.strip()
    if m := _STREAM_RE.match(text):
        return get_stream(m.group(1), stream_limit)
    if m := _EP_RE.match(text):
        if not m.group(2):
            raise WordParseError(f"empty period in {text!r}")
        return EPWord.of(m.group(1), m.group(2))
    if _BITS_RE.match(text):
        return EPWord.of(text, "0")
    bad = sorted(set(text) - set("01()@"))
    if bad:
        raise WordParseError(f"non-binary character(s) {bad} in {text!r}")
    raise WordParseError(f"malformed word literal {text!r}")


def format_word(w: Word) -> str:
    if isinstance(w, SymbolStream):
        return f"@{w.name}" if w.offset == 0 else f"@{w.name}+{w.offset}"
    pre = "".join(map(str, w.pre))
    per = "".join(map(str, w.per))
    return f"{pre}({per})"


# ---------------------------------------------------------
# Symbol access
# ---------------------------------------------------------
def symbol_at(w: Word, n: int) -> int:
    return w.symbol_at(n)


def prefix(w: Word, length: int) -> FiniteWord:
    """First `length` symbols, i.e. omega_0 .. omega_{length-1}."""
    if length < 0:
        raise ValueError("prefix length must be nonnegative")
    return FiniteWord(tuple(w.symbols(0, length)))


def shift(w: Word, n: int) -> Word:
    if n < 0:
        raise ValueError("shift count must be nonnegative")
    return w.shift(n)


# ---------------------------------------------------------
# Comparison and metric
# ---------------------------------------------------------
class Order(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


@dataclass(frozen=True)
class Unknown:
    """Undecided outcome; `depth` is how many symbols were examined."""

    depth: int

    def __bool__(self):
        raise TypeError("Unknown cannot be used as a boolean")


def _exact_bound(u: EPWord, v: EPWord) -> int:
    return len(u.pre) + len(v.pre) + lcm(len(u.per), len(v.per))


def first_difference(u: Word, v: Word, depth: int | None = None) -> int | None | Unknown:
    """Index of the first differing symbol, None if the words are equal.

    For two EPWords the answer is exact. With a stream involved the scan stops
    at `depth` (default: configured stream depth, capped by what is available)
    and returns Unknown when no difference was found.
    """
    if isinstance(u, EPWord) and isinstance(v, EPWord):
        bound = _exact_bound(u, v)
        for i in range(bound):
            if u.symbol_at(i) != v.symbol_at(i):
                return i
        return None

    if depth is None:
        from src.config import get_settings

        depth = get_settings().stream_depth
    for w in (u, v):
        if isinstance(w, SymbolStream):
            depth = min(depth, w.available_depth)
    a = u.symbols(0, depth)
    b = v.symbols(0, depth)
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return Unknown(depth)


def lex_compare(u: Word, v: Word, depth: int | None = None) -> Order | Unknown:
    k = first_difference(u, v, depth)
    if isinstance(k, Unknown):
        return k
    if k is None:
        return Order.EQ
    return Order.LT if u.symbol_at(k) < v.symbol_at(k) else Order.GT


def distance(u: Word, v: Word, depth: int | None = None, bits: int = 64) -> PrecisionReal:
    """d(u, v) = 2**-k with k the first differing index, 0 for equal words."""
    k = first_difference(u, v, depth)
    if isinstance(k, Unknown):
        name = u.name if isinstance(u, SymbolStream) else getattr(v, "name", "?")
        raise DepthExhaustedError(name, k.depth, k.depth)
    if k is None:
        return PrecisionReal.from_value(0, bits)
    return PrecisionReal.from_value(Fraction(1, 2 ** k), bits)
