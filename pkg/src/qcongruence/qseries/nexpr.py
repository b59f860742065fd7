"""Polynomials in the modulus index n, used for bounds, lengths and exponents."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class NExpr:
    """c0 + c1*n + c2*n**2 + ... with rational coefficients.

    Must evaluate to an integer at every admissible (odd) n; ``eval`` checks.
    """

    __slots__ = ("coeffs",)

    def __init__(self, *coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def n(cls):
        return cls(0, 1)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, n):
        v = Fraction(0)
        for c in reversed(self.coeffs):
            v = v * n + c
        if v.denominator != 1:
            raise ValueError(f"{self} is not an integer at n = {n}")
        return int(v)

    def __eq__(self, other):
        if isinstance(other, int):
            other = NExpr(other)
        return isinstance(other, NExpr) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("NExpr", self.coeffs))

    def __add__(self, other):
        other = other if isinstance(other, NExpr) else NExpr(other)
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return NExpr(*(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return NExpr(*(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-(other if isinstance(other, NExpr) else NExpr(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = other if isinstance(other, NExpr) else NExpr(other)
        if not self.coeffs or not other.coeffs:
            return NExpr()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return NExpr(*out)

    __rmul__ = __mul__

    def __truediv__(self, d):
        d = Fraction(d)
        return NExpr(*(c / d for c in self.coeffs))

    def render(self, wrap=False):
        """Canonical text, e.g. ``(n+1)/2`` or ``n-1``; ``wrap`` parenthesises compound forms."""
        if not self.coeffs:
            return "0"
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        body = ""
        for e in range(len(ints) - 1, -1, -1):
            c = ints[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                piece = str(mag)
            else:
                mon = "n" if e == 1 else f"n^{e}"
                piece = mon if mag == 1 else f"{mag}*{mon}"
            if not body:
                body = ("-" if sign == "-" else "") + piece
            else:
                body += sign + piece
        simple = sum(1 for c in ints if c) == 1 and not body.startswith("-")
        if den != 1:
            if not simple:
                body = f"({body})"
            body = f"{body}/{den}"
            return f"({body})" if wrap else body
        if wrap and not (simple and "*" not in body and "^" not in body):
            return f"({body})"
        return body

    def __repr__(self):
        return f"NExpr({self.render()})"


N = NExpr.n()
HALF = (N + 1) / 2          # (n+1)/2
TAIL = (N - 3) / 2          # (n-3)/2
NM1 = N - 1
