"""Univariate Laurent polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import intpoly


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LaurentPoly:
    """sum(coeffs[i] * q**(min_exp + i)), kept canonical.

    The first and last stored coefficients are nonzero; zero is the empty
    tuple with ``min_exp == 0``.  Instances are immutable and hashable.
    """

    __slots__ = ("min_exp", "coeffs", "_hash")

    def __init__(self, coeffs=(), min_exp=0):
        cs = [_frac(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs = ()
            self.min_exp = 0
        else:
            self.coeffs = tuple(cs[lo:hi])
            self.min_exp = min_exp + lo
        self._hash = None

    # construction helpers

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, c, e):
        return cls((c,), e)

    @classmethod
    def q(cls):
        return cls((1,), 1)

    @classmethod
    def from_ints(cls, ints, min_exp=0, scale=1):
        s = _frac(scale)
        return cls([s * c for c in ints], min_exp)

    @classmethod
    def from_dict(cls, terms):
        terms = {e: _frac(c) for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    def to_ints(self):
        """Return (scale, ints) with self = scale * sum(ints[i] q**(min_exp+i))."""
        if not self.coeffs:
            return Fraction(0), []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g, prim = intpoly.primitive(ints)
        return Fraction(g, den), prim

    # basic queries

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def max_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.min_exp + len(self.coeffs) - 1

    def degree(self):
        """Degree of an ordinary polynomial (min_exp >= 0); -1 for zero."""
        if not self.coeffs:
            return -1
        return self.max_exp

    def is_polynomial(self):
        return not self.coeffs or self.min_exp >= 0

    def is_constant(self):
        return not self.coeffs or (self.min_exp == 0 and len(self.coeffs) == 1)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, e):
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def dense(self):
        """Coefficients of an ordinary polynomial from degree 0 upward."""
        if not self.coeffs:
            return []
        if self.min_exp < 0:
            raise ValueError("not an ordinary polynomial")
        return [Fraction(0)] * self.min_exp + list(self.coeffs)

    # arithmetic

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)):
                other = LaurentPoly.const(other)
            else:
                return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.min_exp, self.coeffs))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.min_exp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        if len(self.coeffs) * len(other.coeffs) <= 400:
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, x in enumerate(self.coeffs):
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
            return LaurentPoly(out, self.min_exp + other.min_exp)
        sa, ia = self.to_ints()
        sb, ib = other.to_ints()
        return LaurentPoly.from_ints(intpoly.mul(ia, ib), self.min_exp + other.min_exp, sa * sb)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def shift(self, k):
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def scale(self, c):
        c = _frac(c)
        return LaurentPoly([c * x for x in self.coeffs], self.min_exp)

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc())

    def __call__(self, x):
        x = _frac(x)
        if not self.coeffs:
            return Fraction(0)
        if x == 0 and self.min_exp < 0:
            raise ZeroDivisionError("Laurent polynomial has a pole at 0")
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * x + c
        return v * x**self.min_exp

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self, var="q"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            e = self.min_exp + i
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                mon = var if e == 1 else f"{var}^{e}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.q()


def _require_poly(p, name):
    if not p.is_polynomial():
        raise ValueError(f"{name} must be an ordinary polynomial, got {p}")


def poly_divrem(a, b):
    """(quotient, remainder) with a = b*quotient + remainder, deg remainder < deg b."""
    _require_poly(a, "dividend")
    _require_poly(b, "divisor")
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = a.dense()
    bd = b.dense()
    db = len(bd) - 1
    inv = 1 / bd[-1]
    if len(rem) - 1 < db:
        return ZERO, a
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        c = rem[i + db] * inv
        if c:
            quot[i] = c
            for j in range(db + 1):
                rem[i + j] -= c * bd[j]
    return LaurentPoly(quot), LaurentPoly(rem[:db] if db else [])


def poly_rem(a, b):
    return poly_divrem(a, b)[1]


def poly_gcd(a, b):
    """Monic gcd of two ordinary polynomials; gcd(0, b) is b made monic."""
    _require_poly(a, "a")
    _require_poly(b, "b")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    _, ia = a.to_ints() if a else (0, [])
    _, ib = b.to_ints() if b else (0, [])
    ia = [0] * (a.min_exp if a else 0) + ia
    ib = [0] * (b.min_exp if b else 0) + ib
    g = intpoly.gcd_poly(ia, ib)
    return LaurentPoly(g).monic()


def poly_ext_gcd(a, b):
    """(g, u, v) with u*a + v*b = g and g monic."""
    _require_poly(a, "a")
    _require_poly(b, "b")
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        quo, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    inv = 1 / r0.lc()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def crt_pair(p, rp, q, rq):
    """Unique r with deg r < deg(p*q), r = rp mod p and r = rq mod q."""
    g, u, v = poly_ext_gcd(p, q)
    if not g.is_constant():
        raise ValueError(f"CRT moduli are not coprime: gcd = {g}")
    rp = poly_rem(rp, p)
    rq = poly_rem(rq, q)
    # u*p + v*q = 1, so rp*v*q + rq*u*p hits both residues.
    r = rp * v * q + rq * u * p
    return poly_rem(r, p * q)
