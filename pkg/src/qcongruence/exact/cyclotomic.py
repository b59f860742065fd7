"""Cyclotomic polynomials by exact division of q**n - 1."""

from __future__ import annotations

import threading

from . import intpoly
from .laurent import LaurentPoly

_memo = {1: (-1, 1)}
_lock = threading.Lock()


def divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def cyclotomic_ints(n):
    """Integer coefficient tuple of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    got = _memo.get(n)
    if got is not None:
        return got
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = intpoly.divexact(num, list(cyclotomic_ints(d)))
    out = tuple(num)
    with _lock:
        _memo.setdefault(n, out)
    return out


def cyclotomic(n):
    return LaurentPoly(cyclotomic_ints(n))


def qint_poly(n):
    """[n] = 1 + q + ... + q**(n-1) for n >= 1."""
    if n < 1:
        raise ValueError("qint_poly needs n >= 1")
    return LaurentPoly([1] * n)
