"""The special prefactors Omega_q(n), Theta_q(a, b, n), R_q(a, n) and S_q(a, n).

Each is built in factored form; the ``*_ratfn`` wrappers give reduced
rational functions for callers that want canonical values.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact.factored import FactoredFrac, fsum
from ..exact.laurent import LaurentPoly
from .terms import InadmissibleError, poch_factored, qint_factored


def _require_odd(n, least=3):
    if n % 2 == 0 or n < least:
        raise InadmissibleError(f"n must be odd and >= {least}, got {n}")


def _binom_poly(c0, c1, e):
    """c0 + c1*q**e as a factored fraction."""
    return FactoredFrac.from_laurent(LaurentPoly.from_dict({0: c0, e: c1}))


def omega(n):
    """Omega_q(n) = [n]^3 {(n^2(1-q)^2 - (1+22q+q^2))/24 - 1/(q[n]^2[n-1][n+1])} q^((n+5)/2)/(1+q^2)."""
    _require_odd(n)
    poly = LaurentPoly([n * n - 1, -2 * n * n - 22, n * n - 1])
    first = FactoredFrac.from_laurent(poly) / 24
    second = (FactoredFrac(1, 1) * qint_factored(n) ** 2
              * qint_factored(n - 1) * qint_factored(n + 1)).inverse()
    brace = fsum([first, -second])
    return (qint_factored(n) ** 3 * brace * FactoredFrac(1, (n + 5) // 2)
            / FactoredFrac.binomial(-1, 2))


def _half_ratio_b(n, b):
    # (bq)^((n+1)/2) (q^-2/b; q^2)_h / (bq^2; q^2)_h
    h = (n + 1) // 2
    return (FactoredFrac(b**h, h) * poch_factored(1 / b, -2, h)
            / poch_factored(b, 2, h))


def _half_ratio_a(n, a):
    # (q^-1; q^2)_h^2 / ((q^-1; q^2)_2 (q^2/a, a q^2; q^2)_h)
    h = (n + 1) // 2
    return (poch_factored(1, -1, h) ** 2
            / (poch_factored(1, -1, 2) * poch_factored(1 / a, 2, h) * poch_factored(a, 2, h)))


def theta(n, a, b):
    """Theta_q(a, b, n), the CRT combination of the two residues."""
    _require_odd(n)
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InadmissibleError("theta needs nonzero a and b")
    if (a - b) * (1 - a * b) == 0:
        raise InadmissibleError("theta needs a != b and ab != 1")
    scale = FactoredFrac(1 / ((a - b) * (1 - a * b)))
    b_minus = _binom_poly(b, -1, n)
    mixed = _binom_poly(a * b - 1 - a * a, a, n)
    first = b_minus * mixed * scale * _half_ratio_b(n, b)
    a_pair = FactoredFrac.binomial(a, n) * _binom_poly(a, -1, n)
    second = a_pair * scale * poch_factored(b, 0, 2) * _half_ratio_a(n, a)
    return fsum([first, second])


def _check_a(n, a):
    _require_odd(n)
    a = Fraction(a)
    if a in (0, 1):
        raise InadmissibleError("R_q and S_q need a not in {0, 1}")
    return a


def _tail(n):
    # (q^(n-1); q^2)_2
    return poch_factored(1, n - 1, 2)


def _a_pair_over(a, n):
    # (1 - a q^n)(a - q^n) / (1 - a)^2
    return FactoredFrac.binomial(a, n) * _binom_poly(a, -1, n) / (1 - a) ** 2


def rq(n, a):
    """R_q(a, n)."""
    a = _check_a(n, a)
    corr = FactoredFrac(1, (n + 7) // 2) / _tail(n)
    brace = fsum([FactoredFrac(1, 5) * _half_ratio_a(n, a), -corr])
    return fsum([brace * _a_pair_over(a, n), -corr])


def sq(n, a):
    """S_q(a, n)."""
    a = _check_a(n, a)
    inv_sq = FactoredFrac.binomial(1, 1) ** -2
    lam = (FactoredFrac(n * (1 - a) * a ** ((n - 1) // 2))
           / (FactoredFrac.binomial(1 / a, 1) * FactoredFrac.binomial(a, 1) * (1 - a**n)))
    brace = fsum([inv_sq, -lam])
    corr = (FactoredFrac(1, 1) * _tail(n)).inverse()
    return fsum([brace * _a_pair_over(a, n), -corr])


def named_factored(name, n, params):
    if name == "omega":
        return omega(n)
    if name == "theta":
        return theta(n, _param(params, "a"), _param(params, "b"))
    if name == "rq":
        return rq(n, _param(params, "a"))
    if name == "sq":
        return sq(n, _param(params, "a"))
    raise ValueError(f"unknown named prefactor {name!r}")


def _param(params, name):
    if name not in params:
        raise KeyError(f"parameter {name!r} is not assigned")
    return Fraction(params[name])


def omega_ratfn(n):
    return omega(n).to_ratfn()


def theta_ratfn(n, a, b):
    return theta(n, a, b).to_ratfn()


def proof_prefactor(step, n, a):
    """R_q(a, n) for step 'RQ' or S_q(a, n) for step 'SQ', reduced."""
    step = step.upper()
    if step == "RQ":
        return rq(n, a).to_ratfn()
    if step == "SQ":
        return sq(n, a).to_ratfn()
    raise ValueError(f"unknown proof prefactor {step!r}")
