from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcongruence.exact import (ONE, Q, ZERO, FactoredFrac, LaurentPoly, RatFn, crt_pair,
                               cyclotomic, divisors, fsum, poly_divrem, poly_ext_gcd, poly_gcd,
                               poly_rem, qint_poly, ratfn_arith)
from qcongruence.exact import intpoly


def P(*coeffs, lo=0):
    return LaurentPoly(list(coeffs), lo)


def test_divrem_examples():
    assert poly_divrem(P(-1, 0, 1), P(-1, 1)) == (P(1, 1), ZERO)
    assert poly_divrem(P(0, 0, 0, 1), P(0, 1)) == (P(0, 0, 1), ZERO)
    assert poly_divrem(P(1, 0, 1), P(1, 1)) == (P(-1, 1), P(2))


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        poly_divrem(P(1, 1), ZERO)


def test_gcd_examples():
    assert poly_gcd(P(-1, 0, 1), P(0, -1, 1)) == P(-1, 1)
    assert poly_ext_gcd(P(-1, 1), P(1, 1)) == (ONE, P(Fraction(-1, 2)), P(Fraction(1, 2)))
    assert poly_gcd(cyclotomic(3), cyclotomic(5)) == ONE
    # degenerate input returns the other argument, made monic
    assert poly_gcd(ZERO, P(2, 4)) == P(Fraction(1, 2), 1)


def test_cyclotomic_examples():
    assert cyclotomic(3) == P(1, 1, 1)
    assert cyclotomic(6) == P(1, -1, 1)
    assert cyclotomic(9) == P(1, 0, 0, 1, 0, 0, 1)
    with pytest.raises(ValueError):
        cyclotomic(0)


@pytest.mark.parametrize("n", range(1, 51))
def test_cyclotomic_product(n):
    prod = ONE
    for d in divisors(n):
        prod = prod * cyclotomic(d)
    assert prod == LaurentPoly.from_dict({0: -1, n: 1})
    qint = ONE
    for d in divisors(n):
        if d > 1:
            qint = qint * cyclotomic(d)
    assert qint == qint_poly(n)


def test_ratfn_examples():
    qi = RatFn(LaurentPoly.monomial(1, -1))
    assert ratfn_arith("add", qi, -qi).is_zero()
    assert ratfn_arith("mul", qi, RatFn(LaurentPoly.monomial(1, 3))) == RatFn(P(0, 0, 1))
    x = RatFn(P(-1, 0, 1), P(1, 1))
    assert ratfn_arith("sub", x, RatFn(P(-1, 1))).is_zero()
    with pytest.raises(ZeroDivisionError):
        ratfn_arith("div", x, RatFn(ZERO))


def test_ratfn_canonical_form():
    r = RatFn(P(2, 2), P(0, 4, 4))        # (2+2q)/(4q+4q^2) = 1/(2q)
    assert r.den == ONE
    assert r.num == LaurentPoly.monomial(Fraction(1, 2), -1)
    s = RatFn(P(1, 2, 3), P(5, 0, 7))
    assert s.den.lc() == 1 and s.den.min_exp == 0 and s.den.coeff(0) != 0
    assert RatFn(s.num, s.den) == s


def test_crt_examples():
    assert crt_pair(P(-1, 1), ONE, P(1, 1), -ONE) == Q
    assert crt_pair(P(-1, 1), ZERO, P(1, 1), ZERO) == ZERO
    phi3 = cyclotomic(3)
    r = crt_pair(phi3, Q, P(-1, 1), P(2))
    assert r.degree() < 3
    assert poly_rem(r, phi3) == Q
    assert poly_rem(r, P(-1, 1)) == P(2)
    with pytest.raises(ValueError):
        crt_pair(P(-1, 1), ONE, P(-1, 0, 1), ONE)


small = st.integers(-9, 9)
polys = st.lists(small, min_size=1, max_size=13).map(lambda c: LaurentPoly(c))


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_ext_gcd_certificate(a, b):
    if a.is_zero() and b.is_zero():
        return
    g, u, v = poly_ext_gcd(a, b)
    assert u * a + v * b - g == ZERO
    assert g.lc() == 1
    assert poly_rem(a, g).is_zero() and poly_rem(b, g).is_zero()


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys, polys)
def test_crt_certificate(p, q, rp, rq):
    if p.degree() < 1 or q.degree() < 1 or poly_gcd(p, q).degree() > 0:
        return
    rp, rq = poly_rem(rp, p), poly_rem(rq, q)
    r = crt_pair(p, rp, q, rq)
    assert r.is_zero() or r.degree() < p.degree() + q.degree()
    assert poly_rem(r - rp, p).is_zero()
    assert poly_rem(r - rq, q).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=1, max_size=60), st.lists(small, min_size=1, max_size=60))
def test_kronecker_matches_schoolbook(a, b):
    # inputs follow the module contract: no trailing zeros
    a, b = intpoly.trim(a), intpoly.trim(b)
    if not a or not b:
        assert intpoly.mul(a, b) == []
        return
    want = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            want[i + j] += x * y
    assert intpoly.mul(a * 1, b * 1) == intpoly.trim(want)
    big_a, big_b = a * 3, b * 3
    want = [0] * (len(big_a) + len(big_b) - 1)
    for i, x in enumerate(big_a):
        for j, y in enumerate(big_b):
            want[i + j] += x * y
    assert intpoly.mul(big_a, big_b) == intpoly.trim(want)


def test_factored_matches_ratfn():
    a = FactoredFrac.binomial(Fraction(2), 3) / FactoredFrac.binomial(Fraction(1), 6)
    b = FactoredFrac.from_laurent(P(1, -3, 2)) * FactoredFrac(Fraction(5, 7), -2)
    s = fsum([a, b, -a])
    assert s.to_ratfn() == b.to_ratfn()
    ra, rb = a.to_ratfn(), b.to_ratfn()
    assert (a * b).to_ratfn() == ra * rb
    assert (a / b).to_ratfn() == ra / rb
    assert (a + b).to_ratfn() == ra + rb
    for x in (Fraction(3), Fraction(-5, 2)):
        assert (a + b)(x) == ra(x) + rb(x)


def test_split_of_one_minus_qe():
    f = FactoredFrac.binomial(Fraction(1), 12)
    assert f.to_ratfn() == RatFn(LaurentPoly.from_dict({0: 1, 12: -1}))
    g = FactoredFrac.binomial(Fraction(-1), 5)     # 1 + q^5
    assert g.to_ratfn() == RatFn(LaurentPoly.from_dict({0: 1, 5: 1}))
