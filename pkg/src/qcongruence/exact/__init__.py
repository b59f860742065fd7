"""Exact arithmetic: rationals, Laurent polynomials, rational functions, cyclotomics."""

from fractions import Fraction as BigRat

from .cyclotomic import cyclotomic, divisors, qint_poly
from .factored import FactoredFrac, fprod, fsum
from .laurent import (ONE, Q, ZERO, LaurentPoly, crt_pair, poly_divrem, poly_ext_gcd,
                      poly_gcd, poly_rem)
from .ratfn import RatFn, ratfn_arith

__all__ = [
    "BigRat", "LaurentPoly", "RatFn", "FactoredFrac", "ONE", "Q", "ZERO",
    "cyclotomic", "divisors", "qint_poly", "crt_pair", "poly_divrem", "poly_ext_gcd",
    "poly_gcd", "poly_rem", "ratfn_arith", "fsum", "fprod",
]
