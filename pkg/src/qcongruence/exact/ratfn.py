"""Reduced rational functions in one variable."""

from __future__ import annotations

from fractions import Fraction

from . import intpoly
from .laurent import ONE, LaurentPoly, poly_gcd, poly_divrem


class RatFn:
    """num / den in lowest terms.

    ``den`` is an ordinary monic polynomial with nonzero constant term; every
    power of q lives in ``num`` (possibly as a negative exponent).  Zero is
    0 / 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, *, reduced=False):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduced:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = num, ONE
            return
        # Move the q-power of the denominator into the numerator.
        num = num.shift(-den.min_exp)
        den = den.shift(-den.min_exp)
        if den.degree() > 0:
            shift = num.min_exp
            g = poly_gcd(num.shift(-shift), den)
            if g.degree() > 0:
                num = _divexact(num.shift(-shift), g).shift(shift)
                den = _divexact(den, g)
        lc = den.lc()
        self.num = num.scale(1 / lc)
        self.den = den.scale(1 / lc)

    @classmethod
    def from_poly(cls, p):
        return cls(p, ONE, reduced=True)

    @classmethod
    def const(cls, c):
        return cls(LaurentPoly.const(c), ONE, reduced=True)

    @classmethod
    def monomial(cls, c, e):
        return cls(LaurentPoly.monomial(c, e), ONE, reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self):
        return self.den == ONE

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = _coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFn(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFn(self.num**e, self.den**e, reduced=True)

    def __call__(self, x):
        """Exact value at a rational point."""
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def __repr__(self):
        return f"RatFn({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def _coerce(x):
    if isinstance(x, RatFn):
        return x
    if isinstance(x, LaurentPoly):
        return RatFn.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFn.const(x)
    return NotImplemented


def _divexact(a, b):
    quo, rem = poly_divrem(a, b)
    if not rem.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return quo


def ratfn_arith(op, x, y):
    """Dispatch for the four field operations by name."""
    x, y = _coerce(x), _coerce(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def int_content_free(p):
    """Primitive integer coefficient list of an ordinary polynomial (sign normalised)."""
    _, ints = p.to_ints()
    return [0] * p.min_exp + intpoly.primitive(ints)[1]
