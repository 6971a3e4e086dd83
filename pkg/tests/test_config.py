import pytest

from src.config import ConfigError, Settings, load_settings


def test_defaults():
    settings = load_settings({})
    assert settings == Settings()
    assert settings.precision_digits == 50
    assert settings.tol == 1e-12
    assert settings.precision_bits == 167


def test_environment_values():
    settings = load_settings({"KNEAD_PRECISION_DIGITS": "80", "KNEAD_VERBOSE": "0"})
    assert settings.precision_digits == 80
    assert settings.verbose is False


@pytest.mark.parametrize(
    "environ",
    [
        {"KNEAD_TOL": "tiny"},
        {"KNEAD_TOL": "2"},
        {"KNEAD_PRECISION_DIGITS": "10"},
        {"KNEAD_GRID_START": "0.99999"},
    ],
)
def test_invalid_values(environ):
    with pytest.raises(ConfigError):
        load_settings(environ)


def test_overrides_skip_none():
    settings = load_settings({}).with_overrides(tol=1e-6, precision_digits=None)
    assert settings.tol == 1e-6
    assert settings.precision_digits == 50


def test_error_messages_carry_no_icon():
    with pytest.raises(ConfigError) as info:
        load_settings({"KNEAD_TOL": "2"})
    assert str(info.value) == "KNEAD_TOL must lie in (0, 1)"
    with pytest.raises(ConfigError) as info:
        load_settings({"KNEAD_TOL": "tiny"})
    assert str(info.value).startswith("Invalid value for KNEAD_TOL")
