"""
Runtime settings for the critical-itinerary toolkit.

Values are read from environment variables after an optional `.env` file has
been merged in.
Every numeric operation takes a `settings=` keyword; `get_settings()` gives
the process default.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from functools import lru_cache

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()


@dataclass(frozen=True)
class Settings:
    precision_digits: int = 50
    tol: float = 1e-12
    grid_step: float = 1e-3
    grid_start: float = 1e-4
    grid_delta: float = 1e-4
    stream_depth: int = 500
    precision_ceiling_bits: int = 16384
    growth_threshold: float = 0.1
    growth_margin: float = 0.05
    sieve_limit: int = 1_000_000
    verbose: bool = True

    @property
    def precision_bits(self) -> int:
        # 3.33 bits per decimal digit, rounded up
        return int(self.precision_digits * 3.33) + 1

    def with_overrides(self, **changes) -> "Settings":
        """Copy with the non-None keyword values applied (CLI flags)."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


# variable name -> (field, parser)
_ENV_FIELDS = {
    "KNEAD_PRECISION_DIGITS": ("precision_digits", int),
    "KNEAD_TOL": ("tol", float),
    "KNEAD_GRID_STEP": ("grid_step", float),
    "KNEAD_GRID_START": ("grid_start", float),
    "KNEAD_GRID_DELTA": ("grid_delta", float),
    "KNEAD_STREAM_DEPTH": ("stream_depth", int),
    "KNEAD_PRECISION_CEILING": ("precision_ceiling_bits", int),
    "KNEAD_GROWTH_THRESHOLD": ("growth_threshold", float),
    "KNEAD_GROWTH_MARGIN": ("growth_margin", float),
    "KNEAD_SIEVE_LIMIT": ("sieve_limit", int),
    "KNEAD_VERBOSE": ("verbose", lambda s: s.strip() not in ("0", "false", "False", "")),
}


def load_settings(environ: dict[str, str] | None = None) -> Settings:
    """Build Settings from an environment mapping (defaults to os.environ)."""
    environ = os.environ if environ is None else environ
    values = {}
    for var, (field, parse) in _ENV_FIELDS.items():
        raw = environ.get(var)
        if raw is None:
            continue
        try:
            values[field] = parse(raw)
        except ValueError as e:
            raise ConfigError(f"Invalid value for {var}: {raw!r} ({e})") from e

    settings = Settings(**values)
    if settings.precision_digits < 15:
        raise ConfigError("KNEAD_PRECISION_DIGITS must be at least 15")
    if not 0 < settings.tol < 1:
        raise ConfigError("KNEAD_TOL must lie in (0, 1)")
    if not 0 < settings.grid_start < 1 - settings.grid_delta:
        raise ConfigError("KNEAD_GRID_START must lie below 1 - KNEAD_GRID_DELTA")
    return settings


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
