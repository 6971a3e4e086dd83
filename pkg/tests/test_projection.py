from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import settings as hsettings
from hypothesis.strategies import integers, lists, sampled_from
from mpmath import mp, mpf

from src.errors import DepthExhaustedError
from src.projection import (
    RootStatus,
    exact_difference,
    pair_difference,
    project,
    project_ifs,
    smallest_root,
    truncation_depth,
)
from src.words import EPWord, Order, lex_compare, parse_word
from tests.helpers import close, make_pair

GOLDEN_R = "0.61803398874989484820458683436563811772030917980576"
SQRT_HALF = "0.70710678118654752440084436210484903928483593768847"

bits = lists(integers(0, 1), max_size=5)
periods = lists(integers(0, 1), min_size=1, max_size=5)


# ---------------------------------------------------------
# Projection
# ---------------------------------------------------------
@pytest.mark.parametrize(
    "word, x, expected",
    [
        ("(1)", "0.3", "1"),
        ("(0)", "0.3", "0"),
        ("1(0)", "1/3", "2/3"),
        ("(01)", "1/2", "1/3"),          # x / (1 + x)
        ("01(0)", "1/4", "3/16"),
    ],
)
def test_project_closed_forms(word, x, expected, settings):
    value = project(parse_word(word), Fraction(x), settings=settings)
    assert value.contains(Fraction(expected))
    assert value.error_bound < 1e-40


def test_project_stream_matches_partial_sum(prime_pair, settings):
    value = project(prime_pair.alpha, Fraction(1, 2), eps=1e-35, settings=settings)
    with mp.workprec(200):
        partial = sum(mpf(prime_pair.alpha.symbol_at(k)) / mpf(2) ** (k + 1) for k in range(200))
    assert close(value, partial, 1e-34)


def test_project_stream_depth_exhausted(settings):
    short = parse_word("@primes", stream_limit=100)
    with pytest.raises(DepthExhaustedError):
        project(short, Fraction(99, 100), eps=1e-30, settings=settings)


def test_project_rejects_x_outside_unit_interval(golden_pair, settings):
    with pytest.raises(ValueError):
        project(golden_pair.alpha, 1, settings=settings)


def test_truncation_depth():
    assert truncation_depth(0.5, 1e-9) == 29
    assert truncation_depth(0, 1e-9) == 0


@given(bits, periods, integers(1, 9), integers(0, 30), sampled_from([0, Fraction(1, 2), 1]))
@hsettings(max_examples=200, deadline=None)
def test_ifs_composition_converges(pre, per, k, n, x0):
    w = EPWord(tuple(pre), tuple(per))
    x = Fraction(k, 10)
    gap = abs(project_ifs(w, x, n, x0) - project(w, x))
    # the bound x^(n+1) is attained for w = (1), x0 = 0
    assert gap.compare(x ** (n + 1)) != 1


@pytest.mark.parametrize("n", [10, 20, 40])
@pytest.mark.parametrize("word", ["01(10)", "(011)", "1(0)", "0(1)", "10(01)"])
@pytest.mark.parametrize("x", [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)])
def test_closed_form_matches_truncation(word, x, n, settings):
    w = parse_word(word)
    partial = (1 - x) * sum(w.symbol_at(k) * x ** k for k in range(n + 1))
    gap = abs(project(w, x, settings=settings) - partial)
    assert gap.compare(x ** (n + 1)) != 1


@given(bits, periods, integers(1, 99))
@hsettings(max_examples=200, deadline=None)
def test_projection_stays_in_unit_interval(pre, per, k):
    value = project(EPWord(tuple(pre), tuple(per)), Fraction(k, 100))
    assert value.compare(0) != -1
    assert value.compare(1) != 1


@given(bits, periods, bits, periods)
@hsettings(max_examples=1000, deadline=None)
def test_projection_below_half_is_strictly_increasing(pre_u, per_u, pre_v, per_v):
    u = EPWord(tuple(pre_u), tuple(per_u))
    v = EPWord(tuple(pre_v), tuple(per_v))
    assume(u != v)
    if lex_compare(u, v) is Order.GT:
        u, v = v, u
    x = Fraction(1, 3)
    assert project(u, x).compare(project(v, x)) == -1


# ---------------------------------------------------------
# Difference function
# ---------------------------------------------------------
def test_pair_difference_doubling(doubling_pair, settings):
    # G(x) = (2x - 1) / (1 - x)
    g = pair_difference(doubling_pair, Fraction(1, 4), settings=settings)
    assert g.contains(Fraction(-2, 3))


def test_pair_difference_stream_is_certified(prime_pair, settings):
    g = pair_difference(prime_pair, Fraction(1, 2), eps=1e-30, settings=settings)
    with mp.workprec(200):
        partial = sum(
            (prime_pair.alpha.symbol_at(k) - prime_pair.beta.symbol_at(k)) * mpf(2) ** -k
            for k in range(200)
        )
    assert g.contains(partial)


def test_exact_difference_root_polynomial(golden_pair, doubling_pair):
    coeffs = [int(c) for c in exact_difference(golden_pair).root_polynomial.all_coeffs()]
    assert coeffs in ([1, 1, -1], [-1, -1, 1])
    assert exact_difference(doubling_pair).root_polynomial.degree() == 1


def test_exact_difference_needs_periodic_words(prime_pair):
    with pytest.raises(ValueError):
        exact_difference(prime_pair)


# ---------------------------------------------------------
# Smallest root
# ---------------------------------------------------------
@pytest.mark.parametrize(
    "fixture, expected",
    [("golden_pair", GOLDEN_R), ("sqrt2_pair", SQRT_HALF), ("doubling_pair", "0.5")],
)
def test_smallest_root_periodic(fixture, expected, settings, request):
    result = smallest_root(request.getfixturevalue(fixture), settings=settings)
    assert result.status is RootStatus.ROOT
    assert result.method == "exact-rational"
    assert close(result.r, expected, 1e-11)
    assert result.exact is not None
    assert not result.warnings


def test_smallest_root_prime_pair(prime_pair, settings):
    result = smallest_root(prime_pair, settings=settings)
    assert result.status is RootStatus.ROOT
    assert result.method == "certified-bisection"
    with mp.workprec(200):
        a = 1 / result.r.value
    assert close(a, "1.792568768", 5e-9)


def test_smallest_root_tolerance(golden_pair, settings):
    result = smallest_root(golden_pair, tol=1e-30, settings=settings)
    assert close(result.r, GOLDEN_R, 1e-29)


@pytest.mark.parametrize("fixture", ["golden_pair", "sqrt2_pair", "prime_pair"])
def test_root_is_bracketed_by_a_sign_change(fixture, settings, request):
    pair = request.getfixturevalue(fixture)
    result = smallest_root(pair, settings=settings)
    tol = settings.tol
    below = pair_difference(pair, result.r.lower - tol, settings=settings).compare(0)
    above = pair_difference(pair, result.r.upper + tol, settings=settings).compare(0)
    assert {below, above} == {-1, 1}
    assert result.residual.compare(tol) == -1


def test_no_root(settings):
    # G(x) = x - 1
    result = smallest_root(make_pair("01(0)", "1(0)"), settings=settings)
    assert result.status is RootStatus.NONE_FOUND
    assert result.r is None
    assert result.warnings
    assert result.to_dict()["status"] == "NoneFound"
