from mpmath import mp, mpf

from src.admissibility import CriticalPair
from src.precision import PrecisionReal
from src.words import parse_word


def make_pair(alpha: str, beta: str) -> CriticalPair:
    return CriticalPair(parse_word(alpha), parse_word(beta))


def close(x, target, tol) -> bool:
    """|x - target| <= tol for a PrecisionReal (or number); string targets are read at 200 bits."""
    with mp.workprec(200):
        value = x.value if isinstance(x, PrecisionReal) else mpf(x)
        return abs(value - mpf(target)) <= mpf(tol)
