"""
Growth of the address spaces of an admissible pair.

A window starting with 0 enters (alpha, beta) exactly when it first diverges
above alpha (reads 1 where alpha has 0 after matching a prefix of alpha); a
window starting with 1 enters exactly when it first diverges below beta. So the
address spaces are, up to countably many boundary words, the words avoiding

    F_alpha = { alpha_0..alpha_{k-1} 1 : alpha_k = 0, k >= 1 }
    F_beta  = { beta_0..beta_{k-1} 0  : beta_k = 1,  k >= 1 }

Both signs share these factors; they differ only in whether the exact words
beta (for -) or alpha (for +) are excluded. Counting works on this sofic cover.

The recognizer follows every live match ("track") of a prefix of alpha and of
beta ending at the current symbol. For eventually periodic words, track
positions past the first period are folded modulo the period, which keeps the
state space finite.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.admissibility import CriticalPair
from src.config import Settings, get_settings
from src.errors import BruteforceLimitError
from src.precision import PrecisionReal
from src.utils.io import log
from src.words import EPWord, FiniteWord, Word, prefix

BRUTEFORCE_MAX_LEN = 24
REJECT = -1
_POWER_TOL = 1e-10
_POWER_MAX_ITER = 200_000

UNION_NOTE = (
    "Omega(-) and Omega(+) share the same forbidden factors, so the growth rate "
    "of their union equals the common rate reported here"
)
BOUNDARY_NOTE = (
    "counts are for the sofic cover; exact prefix sets differ by at most O(L) "
    "boundary words per length, which does not change the rate"
)


class GrowthClass(enum.Enum):
    NULL = "Null"
    NON_NULL = "NonNull"
    UNKNOWN = "Unknown"


class Method(enum.Enum):
    AUTOMATON = "automaton"
    BRUTEFORCE = "bruteforce"


# ---------------------------------------------------------
# Forbidden factor families
# ---------------------------------------------------------
@dataclass(frozen=True)
class FactorFamily:
    """Words w|k + flip, for the indices k >= 1 where w_k equals `trigger`."""

    word: Word
    trigger: int   # 0 for the alpha family, 1 for the beta family

    @property
    def flip(self) -> int:
        return 1 - self.trigger

    def indices(self, limit: int) -> list[int]:
        return [k for k in range(1, limit) if self.word.symbol_at(k) == self.trigger]

    def is_empty(self) -> bool:
        """Exact for eventually periodic words (one full period past the preperiod)."""
        if isinstance(self.word, EPWord):
            return not self.indices(self.word.cycle_bound + len(self.word.per) + 1)
        raise ValueError("emptiness is only decidable for eventually periodic words")

    def members(self, max_len: int, minimal: bool = False) -> list[FiniteWord]:
        """Members of length <= max_len; `minimal` drops those containing a shorter member."""
        out = [
            prefix(self.word, k) + FiniteWord((self.flip,))
            for k in self.indices(max_len)
        ]
        if minimal:
            kept: list[FiniteWord] = []
            for m in out:
                s = str(m)
                if not any(str(x) in s for x in kept):
                    kept.append(m)
            out = kept
        return out


@dataclass(frozen=True)
class ForbiddenFamilies:
    alpha: FactorFamily
    beta: FactorFamily


def forbidden_factor_families(pair: CriticalPair) -> ForbiddenFamilies:
    return ForbiddenFamilies(FactorFamily(pair.alpha, 0), FactorFamily(pair.beta, 1))


# ---------------------------------------------------------
# Match tracks
# ---------------------------------------------------------
@dataclass(frozen=True)
class _Tracker:
    """Position bookkeeping for the tracks of one word."""

    symbol: Callable[[int], int]
    advance: Callable[[int], int]
    trigger: int


def _ep_tracker(w: EPWord, trigger: int) -> _Tracker:
    m, q = len(w.pre), len(w.per)

    def advance(c: int) -> int:
        if c + 1 < m + q:
            return c + 1
        return m + q + ((c + 1 - m - q) % q)

    return _Tracker(w.symbol_at, advance, trigger)


def _plain_tracker(w: Word, trigger: int) -> _Tracker:
    return _Tracker(w.symbol_at, lambda c: c + 1, trigger)


def _step_tracks(tracks: frozenset, s: int, t: _Tracker) -> frozenset | None:
    """Advance every live track on symbol s; None when some track diverges the forbidden way."""
    nxt = set()
    for c in tracks:
        expected = t.symbol(c)
        if expected == s:
            nxt.add(t.advance(c))
        elif expected == t.trigger:
            return None
    return frozenset(nxt)


def _step(state, s: int, ta: _Tracker, tb: _Tracker):
    a, b = state
    a2 = _step_tracks(a, s, ta)
    if a2 is None:
        return None
    b2 = _step_tracks(b, s, tb)
    if b2 is None:
        return None
    # a new window opens at this symbol: alpha_0 = 0, beta_0 = 1
    if s == 0:
        a2 = a2 | {ta.advance(0)}
    else:
        b2 = b2 | {tb.advance(0)}
    return (a2, b2)


_START = (frozenset(), frozenset())


# ---------------------------------------------------------
# Automaton
# ---------------------------------------------------------
@dataclass
class GrowthAutomaton:
    states: list[tuple[frozenset, frozenset]]
    transitions: np.ndarray          # shape (n, 2), REJECT for forbidden moves
    start: int
    trimmed: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.states)

    def accepts(self, word: FiniteWord | str) -> bool:
        if self.start == REJECT:
            return False
        q = self.start
        for ch in str(word):
            q = int(self.transitions[q, int(ch)])
            if q == REJECT:
                return False
        return True

    def count_words(self, length: int) -> int:
        """Number of accepted words of the given length (path counting from start)."""
        return self.count_table(length)[length]

    def count_table(self, max_len: int) -> list[int]:
        if self.start == REJECT:
            return [0] * (max_len + 1)
        counts = [1]
        vec = {self.start: 1}
        for _ in range(max_len):
            nxt: dict[int, int] = {}
            for q, c in vec.items():
                for s in (0, 1):
                    t = int(self.transitions[q, s])
                    if t != REJECT:
                        nxt[t] = nxt.get(t, 0) + c
            vec = nxt
            counts.append(sum(vec.values()))
        return counts

    def adjacency(self) -> np.ndarray:
        n = self.size
        mat = np.zeros((n, n), dtype=float)
        for q in range(n):
            for s in (0, 1):
                t = int(self.transitions[q, s])
                if t != REJECT:
                    mat[q, t] += 1
        return mat

    def sample_words(self, rng: np.random.Generator, count: int) -> list[EPWord]:
        """Eventually periodic words accepted at every length.

        Each word is a random walk from the start state, closed into a cycle
        at the first repeated state.
        """
        words = []
        if self.start == REJECT:
            return words
        for _ in range(count):
            q = self.start
            seen = {q: 0}
            symbols: list[int] = []
            while True:
                moves = [s for s in (0, 1) if self.transitions[q, s] != REJECT]
                s = int(rng.choice(moves))
                symbols.append(s)
                q = int(self.transitions[q, s])
                if q in seen:
                    i = seen[q]
                    words.append(EPWord(tuple(symbols[:i]), tuple(symbols[i:])))
                    break
                seen[q] = len(symbols)
        return words


def _trim(states, transitions: np.ndarray, start: int):
    """Drop states with no infinite continuation, then renumber."""
    alive = np.ones(len(states), dtype=bool)
    changed = True
    while changed:
        changed = False
        for q in np.flatnonzero(alive):
            if not any(t != REJECT and alive[t] for t in transitions[q]):
                alive[q] = False
                changed = True
    remap = {old: new for new, old in enumerate(np.flatnonzero(alive))}
    new_states = [states[q] for q in remap]
    new_trans = np.full((len(remap), 2), REJECT, dtype=int)
    for old, new in remap.items():
        for s in (0, 1):
            t = int(transitions[old, s])
            if t != REJECT and t in remap:
                new_trans[new, s] = remap[t]
    new_start = remap.get(start, REJECT)
    return new_states, new_trans, new_start, len(states) - len(remap)


def _minimize(states, transitions: np.ndarray, start: int):
    """Merge states with the same accepted continuations (Moore refinement), then renumber."""
    n = len(states)
    if n == 0:
        return states, transitions, start, 0
    block = np.zeros(n, dtype=int)
    while True:
        moves = np.where(transitions == REJECT, REJECT, block[np.maximum(transitions, 0)])
        keys = np.column_stack([block, moves])
        _, refined = np.unique(keys, axis=0, return_inverse=True)
        refined = refined.reshape(-1)
        if refined.max() == block.max():
            break
        block = refined
    _, first = np.unique(block, return_index=True)
    reps = sorted(int(i) for i in first)
    remap = {int(block[q]): new for new, q in enumerate(reps)}
    new_trans = np.full((len(reps), 2), REJECT, dtype=int)
    for new, q in enumerate(reps):
        for s in (0, 1):
            t = int(transitions[q, s])
            if t != REJECT:
                new_trans[new, s] = remap[int(block[t])]
    new_start = remap[int(block[start])] if start != REJECT else REJECT
    return [states[q] for q in reps], new_trans, new_start, n - len(reps)


@lru_cache(maxsize=256)
def build_automaton(pair: CriticalPair) -> GrowthAutomaton:
    if not pair.is_eventually_periodic:
        raise ValueError("the growth automaton needs two eventually periodic words")
    ta = _ep_tracker(pair.alpha, trigger=0)
    tb = _ep_tracker(pair.beta, trigger=1)

    index = {_START: 0}
    states = [_START]
    rows: list[list[int]] = []
    frontier = [_START]
    while frontier:
        nxt_frontier = []
        for state in frontier:
            row = []
            for s in (0, 1):
                target = _step(state, s, ta, tb)
                if target is None:
                    row.append(REJECT)
                    continue
                if target not in index:
                    index[target] = len(states)
                    states.append(target)
                    nxt_frontier.append(target)
                row.append(index[target])
            rows.append(row)
        frontier = nxt_frontier
    # rows were appended in discovery order, which matches `states`
    transitions = np.array(rows, dtype=int).reshape(-1, 2)

    states, transitions, start, removed = _trim(states, transitions, 0)
    states, transitions, start, merged = _minimize(states, transitions, start)
    automaton = GrowthAutomaton(states, transitions, start, trimmed=True)

    a, b = pair.alpha, pair.beta
    bound = (len(a.pre) + len(a.per) + 1) * (len(b.pre) + len(b.per) + 1)
    if automaton.size > bound:
        automaton.notes.append(f"{automaton.size} states exceed the product bound {bound}")
    if removed:
        automaton.notes.append(f"trimmed {removed} dead-end states")
    if merged:
        automaton.notes.append(f"merged {merged} equivalent states")
    log(f"Automaton for {pair}: {automaton.size} states")
    return automaton


# ---------------------------------------------------------
# Counting
# ---------------------------------------------------------
def _locally_allowed(word: tuple[int, ...], alpha: Word, beta: Word) -> bool:
    """No window of the word diverges above alpha (0-windows) or below beta (1-windows)."""
    n = len(word)
    for i in range(n):
        ref, trigger = (alpha, 0) if word[i] == 0 else (beta, 1)
        for k in range(1, n - i):
            expected = ref.symbol_at(k)
            if word[i + k] != expected:
                if expected == trigger:
                    return False
                break
    return True


def bruteforce_count(pair: CriticalPair, length: int) -> int:
    if length > BRUTEFORCE_MAX_LEN:
        raise BruteforceLimitError(f"bruteforce counting is limited to L <= {BRUTEFORCE_MAX_LEN}")
    return sum(
        _locally_allowed(w, pair.alpha, pair.beta)
        for w in itertools.product((0, 1), repeat=length)
    )


def count_prefixes(pair: CriticalPair, length: int, method: Method | str = Method.AUTOMATON) -> int:
    method = Method(method)
    if method is Method.BRUTEFORCE:
        return bruteforce_count(pair, length)
    return build_automaton(pair).count_words(length)


def track_counts(pair: CriticalPair, max_len: int) -> list[int]:
    """Counts of locally allowed words for L = 0..max_len, using unfolded track positions.

    Works for streams: only prefixes of alpha and beta of length <= max_len are read.
    """
    ta = _plain_tracker(pair.alpha, 0)
    tb = _plain_tracker(pair.beta, 1)
    vec = {_START: 1}
    counts = [1]
    for _ in range(max_len):
        nxt: dict = {}
        for state, c in vec.items():
            for s in (0, 1):
                target = _step(state, s, ta, tb)
                if target is not None:
                    nxt[target] = nxt.get(target, 0) + c
        vec = nxt
        counts.append(sum(vec.values()))
    return counts


# ---------------------------------------------------------
# Reports
# ---------------------------------------------------------
@dataclass
class GrowthReport:
    mode: str                                  # "exact" | "estimate"
    counts: list[int]
    rate: PrecisionReal
    classification: GrowthClass
    per_length_rates: list[PrecisionReal | None] = field(default_factory=list)
    method_notes: list[str] = field(default_factory=list)
    spectral_radius: PrecisionReal | None = None
    states: int | None = None

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "mode": self.mode,
            "classification": self.classification.value,
            "rate": self.rate,
            "spectral_radius": self.spectral_radius,
            "states": self.states,
            "counts": [{"L": L, "count": c, "rate_bound": r}
                       for L, (c, r) in enumerate(zip(self.counts, [None] + self.per_length_rates))
                       if L > 0],
            "method_notes": self.method_notes,
        }


def _upper_rates(counts: list[int], bits: int) -> list[PrecisionReal | None]:
    """(1/L) ln(count_L) for L >= 1; None where no word of length L survives."""
    return [PrecisionReal.from_value(c, bits).log() / L if c > 0 else None
            for L, c in enumerate(counts) if L > 0]


def _perron_bounds(block: np.ndarray) -> tuple[float, float, int]:
    """Collatz-Wielandt bounds on the Perron root of an irreducible block.

    Iterates on block + I, which is primitive, so the row ratios converge.
    """
    n = block.shape[0]
    shifted = block + np.eye(n)
    v = np.ones(n)
    lo, hi = 0.0, float("inf")
    for it in range(1, _POWER_MAX_ITER + 1):
        w = shifted @ v
        ratios = w / v
        lo, hi = max(lo, float(ratios.min())), min(hi, float(ratios.max()))
        if hi - lo <= _POWER_TOL / 10:
            break
        v = w / w.max()
    # float rounding in the products
    slack = 1e-13 * max(1.0, hi)
    return lo - 1 - slack, hi - 1 + slack, it


def non_null_certificate(pair: CriticalPair) -> str | None:
    """Sufficient non-null condition: alpha = 011a', beta = 100b', a' starts 1 or b' starts 0."""
    a = [pair.alpha.symbol_at(i) for i in range(4)]
    b = [pair.beta.symbol_at(i) for i in range(4)]
    if a[:3] != [0, 1, 1] or b[:3] != [1, 0, 0]:
        return None
    if a[3] == 1:
        return "alpha = 0111..., so every 0(1|11)0(1|11)... word is allowed"
    if b[3] == 0:
        return "beta = 1000..., so every 1(0|00)1(0|00)... word is allowed"
    return None


def classify_growth(pair: CriticalPair, settings: Settings | None = None, max_len: int = 20) -> GrowthReport:
    """Exact classification from the trimmed automaton's strongly connected components."""
    settings = settings or get_settings()
    bits = settings.precision_bits
    automaton = build_automaton(pair)
    counts = automaton.count_table(max_len)
    notes = [UNION_NOTE, BOUNDARY_NOTE, *automaton.notes]

    if automaton.size == 0:
        zero = PrecisionReal.from_value(0, bits)
        return GrowthReport("exact", counts, zero, GrowthClass.NULL, _upper_rates(counts, bits),
                            notes + ["empty language"], None, 0)

    adj = automaton.adjacency()
    n_comp, labels = connected_components(csr_matrix(adj), directed=True, connection="strong")

    null = True
    lo_best, hi_best = 0.0, 0.0
    for comp in range(n_comp):
        members = np.flatnonzero(labels == comp)
        block = adj[np.ix_(members, members)]
        edges = int(block.sum())
        if edges == 0:
            continue                      # transient single state
        if edges == len(members):
            continue                      # a single cycle
        null = False
        lo, hi, iters = _perron_bounds(block)
        if hi > hi_best:
            lo_best, hi_best = lo, hi
            notes.append(f"component of {len(members)} states: power iteration converged in {iters} steps")

    if null:
        rate = PrecisionReal.from_value(0, bits)
        notes.append("every strongly connected component is a single cycle (polynomial growth)")
        return GrowthReport("exact", counts, rate, GrowthClass.NULL, _upper_rates(counts, bits),
                            notes, PrecisionReal.from_value(1, bits), automaton.size)

    lo_best = max(lo_best, 1.0)
    radius = PrecisionReal.from_interval(lo_best, hi_best, bits)
    rate = radius.log()
    return GrowthReport("exact", counts, rate, GrowthClass.NON_NULL, _upper_rates(counts, bits),
                        notes, radius, automaton.size)


def prime_family_count(length: int) -> int:
    """Words of the given length of the form 0..01 0..01 ... (zero runs of length >= 1)."""
    if length == 0:
        return 1
    # ending in 0 / ending in 1, starting with 0, no "11"
    end0, end1 = 1, 0
    for _ in range(length - 1):
        end0, end1 = end0 + end1, end0
    return end0 + end1


def estimate_growth(pair: CriticalPair, max_len: int, settings: Settings | None = None) -> GrowthReport:
    """Upper-bound rate (1/L) ln(count_L) from depth-limited forbidden-factor pruning."""
    settings = settings or get_settings()
    bits = settings.precision_bits
    counts = track_counts(pair, max_len)
    rates = _upper_rates(counts, bits)
    rate = rates[max_len - 1] if counts[max_len] else PrecisionReal.from_value(0, bits)

    notes = [UNION_NOTE, BOUNDARY_NOTE,
             f"factors read from prefixes of alpha and beta of length <= {max_len}",
             "(1/L) ln(count_L) is an upper bound on the growth rate for every L"]
    classification = GrowthClass.UNKNOWN
    certificate = non_null_certificate(pair)
    if certificate is not None:
        classification = GrowthClass.NON_NULL
        notes.append(f"non-null certificate: {certificate}")
    elif float(rate.lower) > settings.growth_threshold + settings.growth_margin:
        classification = GrowthClass.NON_NULL
        notes.append(
            f"estimate exceeds threshold {settings.growth_threshold} + margin {settings.growth_margin}"
        )
    beta_family = FactorFamily(pair.beta, 1)
    if [pair.alpha.symbol_at(i) for i in range(3)] == [0, 1, 1] and not beta_family.indices(max_len):
        family = prime_family_count(max_len)
        notes.append(f"zero-run family contributes {family} of the {counts[max_len]} words at L={max_len}")
    return GrowthReport("estimate", counts, rate, classification, rates, notes)
