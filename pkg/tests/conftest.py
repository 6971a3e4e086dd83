import pytest

from src.config import load_settings
from src.precision import PrecisionReal
from tests.helpers import make_pair


@pytest.fixture
def settings():
    """Defaults, independent of the caller's environment and .env."""
    return load_settings({})


@pytest.fixture
def doubling_pair():
    return make_pair("0(1)", "1(0)")


@pytest.fixture
def golden_pair():
    return make_pair("0(10)", "1(0)")


@pytest.fixture
def sqrt2_pair():
    return make_pair("01(10)", "10(01)")


@pytest.fixture
def prime_pair():
    return make_pair("@primes", "1(0)")


@pytest.fixture
def golden(settings):
    """(a, p) = ((1 + sqrt 5) / 2, (3 - sqrt 5) / 2) as intervals."""
    five = PrecisionReal.from_value(5, settings.precision_bits).sqrt()
    return (1 + five) / 2, (3 - five) / 2


@pytest.fixture
def sqrt2(settings):
    return PrecisionReal.from_value(2, settings.precision_bits).sqrt()
