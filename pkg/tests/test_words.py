from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis.strategies import builds, integers, lists

from src.errors import DepthExhaustedError, WordParseError
from src.words import (
    EPWord,
    Order,
    Unknown,
    distance,
    first_difference,
    format_word,
    get_stream,
    is_prime,
    lex_compare,
    parse_word,
    prefix,
    shift,
)

bits = lists(integers(0, 1), max_size=6)
periods = lists(integers(0, 1), min_size=1, max_size=6)
ep_words = builds(lambda pre, per: EPWord(tuple(pre), tuple(per)), bits, periods)


# ---------------------------------------------------------
# Parsing and canonical form
# ---------------------------------------------------------
@pytest.mark.parametrize(
    "text, pre, per",
    [
        ("01(10)", (0, 1), (1, 0)),
        ("(01)", (), (0, 1)),
        ("0(10)", (), (0, 1)),         # trailing 0 absorbed into the period
        ("011", (0, 1, 1), (0,)),      # finite literal means trailing zeros
        ("(1010)", (), (1, 0)),        # period reduced to its primitive root
        ("1(00)", (1,), (0,)),
    ],
)
def test_parse_canonical(text, pre, per):
    w = parse_word(text)
    assert (w.pre, w.per) == (pre, per)


def test_equal_words_compare_equal():
    assert parse_word("0(10)") == parse_word("(01)") == parse_word("010(10)")
    assert parse_word("011") == parse_word("011(0)")
    assert format_word(parse_word("0(10)")) == "(01)"
    assert format_word(parse_word("01(10)")) == "01(10)"


@pytest.mark.parametrize("text", ["01(2)", "01()", "(", "0a1", "@nope", ""])
def test_parse_errors(text):
    with pytest.raises(WordParseError):
        parse_word(text)


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        parse_word("01(2)")


# ---------------------------------------------------------
# Symbol access
# ---------------------------------------------------------
def test_primes_stream_symbols():
    primes = parse_word("@primes")
    assert primes.symbols(0, 12) == [0, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0]
    assert str(prefix(primes, 5)) == "01101"


def test_stream_depth_is_enforced():
    short = get_stream("primes", 50)
    assert short.symbol_at(49) in (0, 1)
    with pytest.raises(DepthExhaustedError):
        short.symbol_at(60)
    with pytest.raises(DepthExhaustedError):
        short.shift(10).symbols(0, 45)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_shift_and_prefix():
    assert shift(parse_word("01(10)"), 3) == parse_word("(01)")
    assert str(prefix(parse_word("0(1)"), 4)) == "0111"
    assert str(prefix(parse_word("(01)"), 0)) == ""
    with pytest.raises(ValueError):
        shift(parse_word("(01)"), -1)


@given(pre=bits, per=periods, n=integers(0, 20), k=integers(0, 20))
@settings(deadline=None, max_examples=300)
def test_shift_matches_symbols(pre, per, n, k):
    w = EPWord(tuple(pre), tuple(per))
    assert w.shift(n).symbol_at(k) == w.symbol_at(n + k)


@given(pre=bits, per=periods)
@settings(deadline=None, max_examples=300)
def test_canonical_form_keeps_symbols(pre, per):
    naive = list(pre) + list(per) * 8
    w = EPWord(tuple(pre), tuple(per))
    assert w.symbols(0, len(naive)) == naive
    assert parse_word(format_word(w)) == w


# ---------------------------------------------------------
# Comparison and metric
# ---------------------------------------------------------
def test_lex_compare_exact():
    assert lex_compare(parse_word("(01)"), parse_word("01(10)")) is Order.LT
    assert lex_compare(parse_word("1(0)"), parse_word("10(01)")) is Order.LT
    assert lex_compare(parse_word("0(10)"), parse_word("(01)")) is Order.EQ
    assert first_difference(parse_word("(01)"), parse_word("(0110)")) == 2


def test_stream_comparison_can_be_unknown():
    primes = parse_word("@primes")
    result = lex_compare(primes, primes, depth=100)
    assert isinstance(result, Unknown)
    assert result.depth == 100
    with pytest.raises(TypeError):
        bool(result)
    assert lex_compare(primes, parse_word("1(0)"), depth=100) is Order.LT


def test_distance():
    assert float(distance(parse_word("0(1)"), parse_word("1(0)"))) == 1.0
    assert float(distance(parse_word("01(0)"), parse_word("0(1)"))) == 0.25
    assert float(distance(parse_word("(01)"), parse_word("0(10)"))) == 0.0
    primes = parse_word("@primes")
    with pytest.raises(DepthExhaustedError):
        distance(primes, primes, depth=50)


@given(u_pre=bits, u_per=periods, v_pre=bits, v_per=periods)
@settings(deadline=None, max_examples=10_000)
def test_lex_compare_antisymmetric(u_pre, u_per, v_pre, v_per):
    u = EPWord(tuple(u_pre), tuple(u_per))
    v = EPWord(tuple(v_pre), tuple(v_per))
    flipped = {Order.LT: Order.GT, Order.GT: Order.LT, Order.EQ: Order.EQ}
    assert lex_compare(v, u) is flipped[lex_compare(u, v)]
    assert (lex_compare(u, v) is Order.EQ) == (u == v)


@given(u=ep_words, v=ep_words)
@settings(deadline=None, max_examples=500)
def test_equal_verdicts_hold_far_beyond_the_bound(u, v):
    bound = len(u.pre) + len(v.pre) + lcm(len(u.per), len(v.per))
    k = first_difference(u, v)
    if k is None:
        assert u.symbols(0, 10 * bound) == v.symbols(0, 10 * bound)
    else:
        assert k < bound
        assert u.symbols(0, k) == v.symbols(0, k)
        assert u.symbol_at(k) != v.symbol_at(k)


@given(u=ep_words, v=ep_words, w=ep_words)
@settings(deadline=None, max_examples=500)
def test_lex_compare_transitive(u, v, w):
    if lex_compare(u, v) is not Order.GT and lex_compare(v, w) is not Order.GT:
        assert lex_compare(u, w) is not Order.GT


@given(u=ep_words, v=ep_words, w=ep_words)
@settings(deadline=None, max_examples=500)
def test_distance_is_ultrametric(u, v, w):
    assert float(distance(u, w)) <= max(float(distance(u, v)), float(distance(v, w)))
    assert float(distance(u, v)) == float(distance(v, u))
