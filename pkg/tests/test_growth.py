import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from mpmath import log as mp_log
from mpmath import mpf

from src.admissibility import Verdict, check_admissible
from src.cli.search_null import candidate_pairs
from src.dynamics import VerifyStatus, reconstruct
from src.errors import BruteforceLimitError
from src.growth import (
    REJECT,
    GrowthClass,
    Method,
    build_automaton,
    classify_growth,
    count_prefixes,
    estimate_growth,
    forbidden_factor_families,
    non_null_certificate,
    prime_family_count,
    track_counts,
)
from src.words import prefix
from tests.helpers import close, make_pair

LN_PHI = "0.48121182505960344749775891342436842313518433438566"
LN_2 = "0.69314718055994530941723212145817656807550013436026"
LN_SQRT2 = "0.34657359027997265470861606072908828403775006718013"


def test_golden_counts(golden_pair):
    # words avoiding 011
    assert build_automaton(golden_pair).count_table(5) == [1, 2, 4, 7, 12, 20]


@pytest.mark.parametrize(
    "alpha, beta",
    [("0(1)", "1(0)"), ("0(10)", "1(0)"), ("01(10)", "10(01)"), ("0(1)", "10(01)")],
)
def test_automaton_matches_bruteforce(alpha, beta):
    pair = make_pair(alpha, beta)
    for length in range(1, 15):
        assert count_prefixes(pair, length) == count_prefixes(pair, length, "bruteforce")


def test_track_counts_match_bruteforce_for_streams(prime_pair):
    counts = track_counts(prime_pair, 10)
    assert counts == [1] + [count_prefixes(prime_pair, L, Method.BRUTEFORCE) for L in range(1, 11)]


@pytest.mark.slow
def test_automaton_matches_bruteforce_on_random_pairs(settings):
    pairs = candidate_pairs(4, 4)
    random.Random(7).shuffle(pairs)
    admissible = [p for p in pairs if check_admissible(p, settings=settings).verdict is Verdict.ADMISSIBLE]
    assert len(admissible) >= 20
    for pair in admissible[:20]:
        automaton = build_automaton(pair)
        for length in range(1, 15):
            assert automaton.count_words(length) == count_prefixes(pair, length, Method.BRUTEFORCE), pair


@pytest.mark.parametrize(
    "fixture, expected",
    [("doubling_pair", LN_2), ("golden_pair", LN_PHI), ("sqrt2_pair", LN_SQRT2)],
)
def test_exact_rates(fixture, expected, settings, request):
    pair = request.getfixturevalue(fixture)
    report = classify_growth(pair, settings)
    assert report.classification is GrowthClass.NON_NULL
    assert close(report.rate, expected, 1e-8)
    assert report.states == build_automaton(pair).size


def test_exact_mode_needs_periodic_words(prime_pair, settings):
    with pytest.raises(ValueError):
        classify_growth(prime_pair, settings)


def test_prime_estimate_is_non_null(prime_pair, settings):
    report = estimate_growth(prime_pair, 20, settings)
    assert report.classification is GrowthClass.NON_NULL
    assert any("certificate" in note for note in report.method_notes)
    for length in range(1, 21):
        assert prime_family_count(length) <= report.counts[length]


def test_estimate_rates_decrease_between_doubled_lengths(prime_pair, settings):
    # count_20 <= count_10 ** 2 for a factor-closed language
    rates = estimate_growth(prime_pair, 20, settings).per_length_rates
    assert rates[19].compare(rates[9]) != 1


@pytest.mark.slow
def test_long_estimate_stays_non_null(prime_pair, settings):
    report = estimate_growth(prime_pair, 30, settings)
    assert float(report.rate.lower) > settings.growth_threshold
    # an upper bound on ln a for a = 1.792568768, and never above ln 2
    assert report.rate.lower >= mp_log(mpf("1.792568768")) - mpf("1e-6")
    assert report.rate.upper <= mp_log(2)
    rates = report.per_length_rates
    assert rates[29].compare(rates[19]) != 1
    assert rates[19].compare(rates[9]) != 1


def test_prime_family_count():
    assert [prime_family_count(n) for n in range(6)] == [1, 1, 2, 3, 5, 8]


def test_non_null_certificate(prime_pair, golden_pair):
    assert non_null_certificate(prime_pair) is not None
    assert non_null_certificate(make_pair("0(1)", "10(01)")) is not None
    assert non_null_certificate(golden_pair) is None


def test_forbidden_families(golden_pair):
    families = forbidden_factor_families(golden_pair)
    assert [str(m) for m in families.alpha.members(6, minimal=True)] == ["011"]
    assert [str(m) for m in families.alpha.members(6)] == ["011", "01011"]
    assert families.beta.is_empty()
    assert not families.alpha.is_empty()


def test_family_emptiness_needs_periodic_word(prime_pair):
    with pytest.raises(ValueError):
        forbidden_factor_families(prime_pair).alpha.is_empty()


def test_sampled_words_are_accepted(sqrt2_pair):
    automaton = build_automaton(sqrt2_pair)
    words = automaton.sample_words(np.random.default_rng(3), 10)
    assert len(words) == 10
    for w in words:
        assert automaton.accepts(prefix(w, 40))


def test_automaton_rejects_forbidden_factor(golden_pair):
    automaton = build_automaton(golden_pair)
    assert automaton.accepts("0101000")
    assert not automaton.accepts("1011")


def test_bruteforce_limit(golden_pair):
    with pytest.raises(BruteforceLimitError):
        count_prefixes(golden_pair, 25, Method.BRUTEFORCE)


# ---------------------------------------------------------
# Automaton invariants
# ---------------------------------------------------------
NAMED_PAIRS = [("0(1)", "1(0)"), ("0(10)", "1(0)"), ("01(10)", "10(01)"), ("0(1)", "10(01)")]


def _state_bound(pair):
    a, b = pair.alpha, pair.beta
    return (len(a.pre) + len(a.per) + 1) * (len(b.pre) + len(b.per) + 1)


def _admissible(pairs, settings):
    return [p for p in pairs if check_admissible(p, settings=settings).verdict is Verdict.ADMISSIBLE]


@pytest.mark.parametrize("alpha, beta", NAMED_PAIRS)
def test_trimmed_states_all_continue(alpha, beta):
    automaton = build_automaton(make_pair(alpha, beta))
    assert automaton.trimmed
    assert all((automaton.transitions[q] != REJECT).any() for q in range(automaton.size))
    for length in range(1, 13):
        for bits in itertools.product("01", repeat=length):
            word = "".join(bits)
            if automaton.accepts(word):
                assert automaton.accepts(word + "0") or automaton.accepts(word + "1"), word


@pytest.mark.parametrize("alpha, beta", NAMED_PAIRS)
def test_per_length_rates_bound_the_rate(alpha, beta, settings):
    report = classify_growth(make_pair(alpha, beta), settings, max_len=20)
    assert all(r.compare(report.rate) != -1 for r in report.per_length_rates)


@pytest.mark.parametrize("fixture", ["golden_pair", "doubling_pair", "sqrt2_pair"])
def test_rate_matches_reconstructed_slope(fixture, settings, request):
    pair = request.getfixturevalue(fixture)
    reconstruction = reconstruct(pair, verify_len=64, settings=settings)
    assert reconstruction.verdict.status is VerifyStatus.VERIFIED
    report = classify_growth(pair, settings)
    assert abs(report.rate - (1 / reconstruction.r).log()).compare(Fraction(1, 10**8)) == -1


def test_state_bound_on_short_pairs(settings):
    for pair in _admissible(candidate_pairs(2, 2), settings):
        assert build_automaton(pair).size <= _state_bound(pair), str(pair)



def test_merging_keeps_the_counts(sqrt2_pair):
    automaton = build_automaton(sqrt2_pair)
    assert automaton.count_table(12) == [1] + [count_prefixes(sqrt2_pair, L, Method.BRUTEFORCE) for L in range(1, 13)]
    rows = {tuple(row) for row in automaton.transitions.tolist()}
    # no two states share both successors after merging
    assert len(rows) == automaton.size


@pytest.mark.slow
def test_state_bound_on_longer_pairs(settings):
    for pair in _admissible(candidate_pairs(4, 4), settings):
        assert build_automaton(pair).size <= _state_bound(pair), str(pair)
