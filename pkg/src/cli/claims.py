"""
Published values for a few pairs. They only annotate reports next to the
measured value; nothing in the library reads them.
"""

from __future__ import annotations

from mpmath import mpf

from src.admissibility import CriticalPair
from src.precision import PrecisionReal

# str(pair) -> quantity -> published value
CLAIMS: dict[str, dict[str, str]] = {
    "(@primes, 1(0))": {"a": "1.792568768", "p": "0.4421413462"},
    "(01(10), 10(01))": {"growth_rate": "0"},
}


def claims_for(pair: CriticalPair) -> dict[str, str]:
    return CLAIMS.get(str(pair), {})


def annotate(pair: CriticalPair, measured: dict[str, PrecisionReal]) -> list[dict]:
    """One comparison row per quantity that has a published value."""
    rows = []
    for quantity, claimed in claims_for(pair).items():
        if quantity not in measured:
            continue
        value = measured[quantity]
        difference = value - PrecisionReal.from_value(claimed, value.bits)
        rows.append({
            "quantity": quantity,
            "published": claimed,
            "measured": value,
            "difference": difference,
            "consistent": abs(difference).lower <= _rounding_of(claimed),
        })
    return rows


def _rounding_of(claimed: str) -> mpf:
    """Half a unit in the last published digit; integers are taken as exact."""
    if "." not in claimed:
        return mpf(0)
    decimals = len(claimed.split(".")[1])
    return mpf(5) / mpf(10) ** (decimals + 1)
