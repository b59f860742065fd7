from fractions import Fraction

import pytest

POOL = (2, 3, 5, 7, 11, 13, Fraction(3, 2), Fraction(5, 3), Fraction(7, 2), -2, -3)

SAMPLES4 = [
    {"a": 2, "b": 3, "c": 5, "d": 7},
    {"a": Fraction(3, 2), "b": -2, "c": 11, "d": Fraction(5, 3)},
    {"a": -3, "b": 13, "c": Fraction(7, 2), "d": 2},
]


def npoch(x, q, k, step=2):
    """Numeric (x; q^step)_k with plain Fractions; an oracle independent of the engine."""
    out = Fraction(1)
    for j in range(k):
        out *= 1 - x * q ** (step * j)
    return out


def nqint(m, q):
    return (1 - Fraction(q) ** m) / (1 - Fraction(q))


@pytest.fixture
def samples4():
    return [dict(s) for s in SAMPLES4]
