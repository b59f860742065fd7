"""Rational functions kept as products of small polynomial "atoms".

Every summand in this project is a product of binomials ``1 - c*q**e``.
Keeping those factors apart means a sum of such terms can be put over a
common denominator without any polynomial gcd: the denominator is just the
maximal power of each atom.  Only the numerator of a sum is ever expanded.

An atom is a primitive integer polynomial with positive constant term,
stored as a tuple of coefficients (lowest degree first).  Binomials
``1 - q**e`` and ``1 + q**e`` are split into cyclotomic atoms so that the
same cyclotomic factor always has one key.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import intpoly
from .cyclotomic import cyclotomic_ints, divisors
from .laurent import LaurentPoly
from .ratfn import RatFn


def _cyclo_atom(d):
    c = cyclotomic_ints(d)
    # Phi_1 = q - 1 is stored as 1 - q.
    return (1, -1) if d == 1 else c


def split_poly(ints):
    """Factor a nonzero integer polynomial into (unit, q-shift, [(atom, mult)], rest).

    ``rest`` is the leftover primitive polynomial (``(1,)`` when the input
    was fully split into atoms); it has positive constant term.
    """
    ints = intpoly.trim(list(ints))
    if not ints:
        raise ZeroDivisionError("cannot split the zero polynomial")
    s = intpoly.low_order(ints)
    p = ints[s:]
    g = intpoly.content(p)
    if p[0] < 0:
        g = -g
    p = [c // g for c in p]
    unit = Fraction(g)
    if len(p) == 1:
        return unit, s, [], (1,)
    e = len(p) - 1
    if all(c == 0 for c in p[1:-1]) and p[0] == 1 and p[-1] in (1, -1):
        if p[-1] == -1:
            # 1 - q^e = prod_{d | e} Phi_d, with Phi_1 written 1 - q
            return unit, s, [(_cyclo_atom(d), 1) for d in divisors(e)], (1,)
        # 1 + q^e = prod_{d | 2e, d does not divide e} Phi_d
        return unit, s, [(_cyclo_atom(d), 1) for d in divisors(2 * e) if e % d], (1,)
    return unit, s, [], tuple(p)


class FactoredFrac:
    """scalar * q**shift * num * prod(atom**mult).

    Negative multiplicities are denominator factors.  ``num`` is a primitive
    integer polynomial with positive constant term.  Zero has scalar 0.
    Treat instances as immutable.
    """

    __slots__ = ("scalar", "shift", "num", "atoms")

    def __init__(self, scalar, shift=0, num=(1,), atoms=None):
        self.scalar = Fraction(scalar)
        if self.scalar == 0:
            self.shift, self.num, self.atoms = 0, (1,), {}
            return
        self.shift = shift
        self.num = tuple(num)
        self.atoms = {k: m for k, m in (atoms or {}).items() if m}

    # constructors

    @classmethod
    def const(cls, c):
        return cls(c)

    @classmethod
    def monomial(cls, c, e):
        return cls(c, e)

    @classmethod
    def from_ints(cls, ints, scale=1, shift=0, split=True):
        ints = intpoly.trim(list(ints))
        if not ints or scale == 0:
            return cls(0)
        unit, s, atoms, rest = split_poly(ints)
        out = {}
        if split and len(rest) > 1:
            out[rest] = 1
            rest = (1,)
        for key, m in atoms:
            out[key] = out.get(key, 0) + m
        return cls(unit * Fraction(scale), shift + s, rest, out)

    @classmethod
    def from_laurent(cls, p, split=True):
        if p.is_zero():
            return cls(0)
        scale, ints = p.to_ints()
        return cls.from_ints(ints, scale, p.min_exp, split=split)

    @classmethod
    def binomial(cls, c, e):
        """1 - c*q**e for rational c."""
        c = Fraction(c)
        if c == 0:
            return cls(1)
        if e == 0:
            return cls(1 - c)
        if e < 0:
            # 1 - c q^e = -c q^e (1 - q^-e / c)
            return cls(-c, e) * cls.binomial(1 / c, -e)
        ints = [c.denominator] + [0] * (e - 1) + [-c.numerator]
        return cls.from_ints(ints, Fraction(1, c.denominator))

    # queries

    def is_zero(self):
        return self.scalar == 0

    def __bool__(self):
        return self.scalar != 0

    def num_atoms(self):
        return {k: m for k, m in self.atoms.items() if m > 0}

    def den_atoms(self):
        return {k: -m for k, m in self.atoms.items() if m < 0}

    def is_polynomial_form(self):
        return not any(m < 0 for m in self.atoms.values())

    # arithmetic

    def __mul__(self, other):
        if not isinstance(other, FactoredFrac):
            other = FactoredFrac(other)
        if self.scalar == 0 or other.scalar == 0:
            return FactoredFrac(0)
        atoms = dict(self.atoms)
        for k, m in other.atoms.items():
            atoms[k] = atoms.get(k, 0) + m
        num = self.num if len(other.num) == 1 else (
            other.num if len(self.num) == 1 else tuple(intpoly.mul(list(self.num), list(other.num))))
        return FactoredFrac(self.scalar * other.scalar, self.shift + other.shift, num, atoms)

    __rmul__ = __mul__

    def inverse(self):
        if self.scalar == 0:
            raise ZeroDivisionError("inverse of zero")
        atoms = {k: -m for k, m in self.atoms.items()}
        if len(self.num) > 1:
            atoms[self.num] = atoms.get(self.num, 0) - 1
        return FactoredFrac(1 / self.scalar, -self.shift, (1,), atoms)

    def __truediv__(self, other):
        if not isinstance(other, FactoredFrac):
            other = FactoredFrac(other)
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return FactoredFrac(1)
        if self.scalar == 0:
            return FactoredFrac(0)
        num = tuple(intpoly.power(list(self.num), e)) if len(self.num) > 1 else self.num
        return FactoredFrac(self.scalar**e, self.shift * e, num,
                            {k: m * e for k, m in self.atoms.items()})

    def __neg__(self):
        return FactoredFrac(-self.scalar, self.shift, self.num, self.atoms)

    def __add__(self, other):
        if not isinstance(other, FactoredFrac):
            other = FactoredFrac(other)
        return fsum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, FactoredFrac):
            other = FactoredFrac(other)
        return fsum([self, -other])

    def __rsub__(self, other):
        return FactoredFrac(other) - self

    # expansion

    def numerator_ints(self):
        """Expanded numerator polynomial (no scalar, no shift)."""
        parts = [list(self.num)]
        for k, m in self.atoms.items():
            if m > 0:
                parts.append(intpoly.power(list(k), m))
        return intpoly.product(parts)

    def denominator_ints(self):
        parts = [intpoly.power(list(k), -m) for k, m in self.atoms.items() if m < 0]
        return intpoly.product(parts)

    def to_ratfn(self):
        if self.scalar == 0:
            return RatFn.const(0)
        num = LaurentPoly.from_ints(self.numerator_ints(), self.shift, self.scalar)
        den = LaurentPoly.from_ints(self.denominator_ints())
        return RatFn(num, den)

    def __call__(self, x):
        """Exact value at a rational point q = x."""
        x = Fraction(x)
        if self.scalar == 0:
            return Fraction(0)
        v = self.scalar * x**self.shift * intpoly.evaluate(self.num, x)
        for k, m in self.atoms.items():
            a = intpoly.evaluate(k, x)
            if a == 0 and m < 0:
                raise ZeroDivisionError(f"pole at q = {x}")
            v *= a**m
        return v

    def equals(self, other):
        return (self - other).is_zero()

    def __repr__(self):
        return (f"FactoredFrac(scalar={self.scalar}, shift={self.shift}, "
                f"num_deg={len(self.num) - 1}, atoms={len(self.atoms)})")


def fsum(terms):
    """Exact sum of factored fractions over the minimal atom-wise common denominator."""
    terms = [t for t in terms if t.scalar != 0]
    if not terms:
        return FactoredFrac(0)
    if len(terms) == 1:
        return terms[0]
    keys = set()
    for t in terms:
        keys.update(t.atoms)
    common = {}
    for k in keys:
        common[k] = min(t.atoms.get(k, 0) for t in terms)
    smin = min(t.shift for t in terms)
    den_l = lcm(*(t.scalar.denominator for t in terms))
    total = []
    for t in terms:
        parts = [list(t.num)]
        for k, m in t.atoms.items():
            r = m - common[k]
            if r:
                parts.append(intpoly.power(list(k), r))
        for k in keys:
            if k not in t.atoms and common[k]:
                parts.append(intpoly.power(list(k), -common[k]))
        poly = intpoly.product(parts)
        factor = t.scalar.numerator * (den_l // t.scalar.denominator)
        poly = intpoly.shift(intpoly.scale(poly, factor), t.shift - smin)
        total = intpoly.add(total, poly)
    if not total:
        return FactoredFrac(0)
    unit, s, atoms, rest = split_poly(total)
    for key, m in atoms:
        common[key] = common.get(key, 0) + m
    return FactoredFrac(unit / den_l, smin + s, rest, common)


def fprod(factors):
    out = FactoredFrac(1)
    for f in factors:
        out = out * f
    return out
