"""Classical (q = 1) supercongruences modulo p^(r+3), checked with exact rationals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .congruence import FAIL, PASS, SKIPPED, Verdict
from .exact.laurent import ONE

INF = math.inf


def rising(x, k):
    """(x)_k = x (x+1) ... (x+k-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = Fraction(x)
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def _vp_int(m, p):
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def vp(x, p):
    """p-adic valuation of a rational; ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(abs(x.numerator), p) - _vp_int(x.denominator, p)


@dataclass(frozen=True)
class PadicTarget:
    name: str
    lhs: object          # k -> Fraction
    rhs: object          # k -> Fraction
    const: Fraction
    needs_p_gt_3: bool
    q_side: str


M1, M3 = Fraction(-1, 2), Fraction(-3, 2)
T = Fraction(3, 2)
fact = math.factorial


def _sign(k):
    return -1 if k % 2 else 1


TARGETS = {
    "PAD13": PadicTarget(
        "PAD13",
        lambda k: _sign(k) * (4 * k - 1) * rising(M1, k) ** 5 / fact(k) ** 5,
        lambda k: rising(T, k) ** 3 / (fact(k) * fact(k + 2) ** 2),
        Fraction(1, 16), True, "COR13"),
    "PAD14": PadicTarget(
        "PAD14",
        lambda k: _sign(k) * (4 * k - 1) * rising(M1, k) ** 4 * rising(M3, k)
        / (fact(k) ** 4 * fact(k + 1)),
        lambda k: rising(T, k) ** 3 / (fact(k) * fact(k + 2) * fact(k + 3)),
        Fraction(1, 16), True, "COR14"),
    "PAD15": PadicTarget(
        "PAD15",
        lambda k: (4 * k - 1) * rising(M1, k) ** 6 / fact(k) ** 6,
        lambda k: rising(T, k) ** 3 * rising(Fraction(7, 2), k) / (fact(k) * fact(k + 2) ** 3),
        Fraction(15, 64), False, "COR15"),
    "PAD16": PadicTarget(
        "PAD16",
        lambda k: (4 * k - 1) * rising(M1, k) ** 5 * rising(M3, k) / (fact(k) ** 5 * fact(k + 1)),
        lambda k: rising(T, k) ** 3 * rising(Fraction(9, 2), k)
        / (fact(k) * fact(k + 2) ** 2 * fact(k + 3)),
        Fraction(35, 64), True, "COR16"),
    "PAD17": PadicTarget(
        "PAD17",
        lambda k: (4 * k - 1) * rising(M1, k) ** 4 * rising(M3, k) ** 2
        / (fact(k) ** 4 * fact(k + 1) ** 2),
        lambda k: rising(T, k) ** 3 * rising(Fraction(11, 2), k)
        / (fact(k) * fact(k + 2) * fact(k + 3) ** 2),
        Fraction(63, 64), True, "COR17"),
}


def sides(target_id, p, r):
    """Exact (LHS, RHS) of a classical display at modulus p^r."""
    t = TARGETS[target_id.upper()]
    pr = p**r
    lhs = sum((t.lhs(k) for k in range((pr + 1) // 2 + 1)), Fraction(0))
    pre = t.const * pr * (p ** (2 * r) - p ** (4 * r) - 1) / Fraction(p ** (2 * r) - 1)
    rhs = pre * sum((t.rhs(k) for k in range((pr - 3) // 2 + 1)), Fraction(0))
    return lhs, rhs, pre


def classical_check(target_id, p, r):
    """PASS iff vp(LHS - RHS) >= r + 3."""
    tid = target_id.upper()
    if tid not in TARGETS:
        raise KeyError(f"unknown classical target {target_id!r}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if p % 2 == 0 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    t = TARGETS[tid]
    mod = f"{p}^{r + 3}"
    if t.needs_p_gt_3 and p <= 3:
        return Verdict(SKIPPED, diagnostics=f"{tid} requires p > 3", modulus=mod)
    lhs, rhs, pre = sides(tid, p, r)
    if vp(t.const.denominator, p) > 0 or vp(pre, p) < 0:
        return Verdict(FAIL, None, ONE, "right-hand prefactor has a p in its denominator", mod)
    v = vp(lhs - rhs, p)
    status = PASS if v >= r + 3 else FAIL
    note = "exact equality" if v == INF else f"v_{p}(LHS - RHS) = {v}"
    if tid == "PAD15" and p <= 3:
        note += "; the display states no p > 3 condition"
    return Verdict(status, None, ONE, note, mod, value=lhs - rhs)
