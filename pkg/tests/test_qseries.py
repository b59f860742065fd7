import random
from fractions import Fraction

import pytest

from conftest import SAMPLES4, nqint, npoch
from qcongruence.exact import LaurentPoly, RatFn, cyclotomic, poly_gcd
from qcongruence.exact.laurent import ONE
from qcongruence.qseries import (CATALOG, InadmissibleError, catalog_sum, catalog_sum_factored,
                                 catalog_term, mono, omega, proof_prefactor, qbinom, qint, qpoch,
                                 resolve, theta)
from qcongruence.qseries.prefactors import rq, sq
from qcongruence.qseries.terms import eval_term

F = Fraction


def L(d):
    return RatFn(LaurentPoly.from_dict(d))


def test_qint_examples():
    assert qint(3) == L({0: 1, 1: 1, 2: 1})
    assert qint(-1) == L({-1: -1})
    assert qint(1) == L({0: 1})
    assert qint(0).is_zero()


def test_qpoch_examples():
    assert qpoch(mono(1, -1), 2, 2) == L({-1: -1, 0: 2, 1: -1})     # (1 - q^-1)(1 - q)
    assert qpoch(mono(5, 3, a=1), 2, 0, {"a": 2}) == L({0: 1})
    assert qpoch(mono(1, -1, a=1), 2, 1, {"a": 2}) == L({0: 1, -1: -2})
    with pytest.raises(KeyError):
        qpoch(mono(1, 0, b=1), 2, 1, {})


def test_qbinom_examples():
    assert qbinom(2, 1) == L({0: 1, 1: 1})
    assert qbinom(7, 0) == L({0: 1})
    assert qbinom(4, 2) == L({0: 1, 1: 1, 2: 2, 3: 1, 4: 1})
    with pytest.raises(ValueError):
        qbinom(2, 3)


@pytest.mark.parametrize("t", range(0, 31))
def test_central_qbinomial_identity(t):
    # (q;q^2)_t / (q^2;q^2)_t * (-q;q)_t^2 == [2t choose t]
    lhs = qpoch(mono(1, 1), 2, t) / qpoch(mono(1, 2), 2, t) * qpoch(mono(-1, 1), 1, t) ** 2
    rhs = qbinom(2 * t, t)
    assert lhs == rhs
    assert rhs.den == ONE and rhs.num.min_exp == 0
    assert all(c.denominator == 1 and c >= 0 for c in rhs.num.coeffs)


def test_pochhammer_multiplicativity():
    rng = random.Random(20240611)
    for _ in range(50):
        c = F(rng.choice([1, 2, 3, -2, 5]), rng.choice([1, 2, 3]))
        e = rng.randint(-4, 4)
        step = rng.choice([1, 2])
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        x = mono(c, e)
        whole = qpoch(x, step, m + k)
        parts = qpoch(x, step, m) * qpoch(mono(c, e + step * m), step, k)
        assert whole == parts


def test_catalog_term_examples():
    for s in SAMPLES4:
        assert catalog_term("THM11", "LHS", 0, 3, s) == L({-1: -1})
    q1 = L({0: 1, 1: 1})
    assert catalog_term("EQ13", "LHS", 1, 5) == qint(3) / q1**4
    # COR13, k = 1, n = 5: (-1) * q^(1+5) * [3] (q^-1;q^2)_1^5 / (q^2;q^2)_1^5
    want = -L({6: 1}) * qint(3) * qpoch(mono(1, -1), 2, 1) ** 5 / qpoch(mono(1, 2), 2, 1) ** 5
    assert catalog_term("COR13", "LHS", 1, 5) == want
    with pytest.raises(ValueError):
        catalog_term("EQ13", "LHS", 9, 5)
    with pytest.raises(InadmissibleError):
        catalog_term("COR14", "LHS", 0, 3)


def test_catalog_sum_examples():
    q1, q2 = L({0: 1, 1: 1}), L({0: 1, 2: 1})
    want = L({-1: -1}) + qint(3) / q1**4 + qint(7) * L({4: 1}) / (q1**8 * q2**4)
    assert catalog_sum("EQ13", "LHS", 3, "half") == want
    # (n-3)/2 bound at n = 3 keeps only k = 0
    s = {"c": 5, "d": 7}
    rhs = catalog_sum_factored("THM12", "RHS", 3, "half", s)
    pre = eval_term(CATALOG["THM12"].rhs.prefactor, None, 3, s)
    assert (rhs / pre).to_ratfn() == L({0: 1})


def _thm11_oracle(n, m, s, q):
    a, b, c, d = (F(s[x]) for x in "abcd")
    lhs = F(0)
    for k in range(m + 1):
        top = (npoch(a / q, q, k) * npoch(1 / (a * q), q, k) * npoch(1 / (b * q), q, k)
               * npoch(c / q, q, k) * npoch(d / q, q, k) * npoch(1 / q, q, k))
        bot = (npoch(q * q / a, q, k) * npoch(a * q * q, q, k) * npoch(b * q * q, q, k)
               * npoch(q * q / c, q, k) * npoch(q * q / d, q, k) * npoch(q * q, q, k))
        lhs += nqint(4 * k - 1, q) * top / bot * (b * q**7 / (c * d)) ** k
    h = (n + 1) // 2
    pre = nqint(n, q) * (b * q) ** h * npoch(1 / (b * q * q), q, h) / npoch(b * q * q, q, h)
    rhs = F(0)
    for k in range(h + 1):
        top = (npoch(a / q, q, k) * npoch(1 / (a * q), q, k) * npoch(1 / (b * q), q, k)
               * npoch(q**3 / (c * d), q, k))
        bot = (npoch(q * q, q, k) * npoch(1 / (b * q * q), q, k) * npoch(q * q / c, q, k)
               * npoch(q * q / d, q, k))
        rhs += top / bot * q ** (2 * k)
    return lhs, pre * rhs


@pytest.mark.parametrize("n", [3, 5])
@pytest.mark.parametrize("qv", [F(3), F(-5, 2)])
def test_thm11_sides_match_direct_evaluation(n, qv):
    for s in SAMPLES4:
        lhs, rhs = _thm11_oracle(n, n - 1, s, qv)
        assert catalog_sum("THM11", "LHS", n, "nm1", s)(qv) == lhs
        assert catalog_sum("THM11", "RHS", n, "nm1", s)(qv) == rhs


def _omega_oracle(n, q):
    br = F(n * n * (1 - q) ** 2 - (1 + 22 * q + q * q), 24) - 1 / (
        q * nqint(n, q) ** 2 * nqint(n - 1, q) * nqint(n + 1, q))
    return nqint(n, q) ** 3 * br * q ** ((n + 5) // 2) / (1 + q * q)


def test_omega_values():
    assert omega(3)(F(2)) == F(-411656, 225)
    q = F(2)
    assert 1 / (q * nqint(3, q) ** 2 * nqint(2, q) * nqint(4, q)) == F(1, 4410)
    for n in (3, 5, 7, 9):
        for qv in (F(3), F(-2, 3)):
            assert omega(n)(qv) == _omega_oracle(n, qv)
    with pytest.raises(InadmissibleError):
        omega(4)
    with pytest.raises(InadmissibleError):
        omega(1)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
def test_omega_denominator_coprime_to_phi(n):
    assert poly_gcd(omega(n).den, cyclotomic(n)) == ONE


def _theta_oracle(n, a, b, q):
    h = (n + 1) // 2
    s = (a - b) * (1 - a * b)
    first = ((b - q**n) * (a * b - 1 - a * a + a * q**n) / s
             * (b * q) ** h * npoch(1 / (b * q * q), q, h) / npoch(b * q * q, q, h))
    second = ((1 - a * q**n) * (a - q**n) / s * npoch(b, q, 2) * npoch(1 / q, q, h) ** 2
              / (npoch(1 / q, q, 2) * npoch(q * q / a, q, h) * npoch(a * q * q, q, h)))
    return first + second


def test_theta_values():
    v = theta(3, 2, 3)(F(5))
    assert v == _theta_oracle(3, F(2), F(3), F(5))
    for n in (3, 5, 7):
        for a, b in ((F(3, 2), F(-2)), (F(7), F(5, 3))):
            assert theta(n, a, b)(F(3)) == _theta_oracle(n, a, b, F(3))
    with pytest.raises(InadmissibleError):
        theta(3, 2, 2)
    with pytest.raises(InadmissibleError):
        theta(3, 2, F(1, 2))


def _rs_oracle(n, a, q):
    h = (n + 1) // 2
    pair = (1 - a * q**n) * (a - q**n) / (1 - a) ** 2
    tail = npoch(q ** (n - 1), q, 2)
    r_br = (q**5 * npoch(1 / q, q, h) ** 2 / (npoch(1 / q, q, 2) * npoch(q * q / a, q, h)
                                             * npoch(a * q * q, q, h)) - q ** ((n + 7) // 2) / tail)
    r = r_br * pair - q ** ((n + 7) // 2) / tail
    lam = n * (1 - a) * a ** ((n - 1) // 2) / ((1 - q / a) * (1 - a * q) * (1 - a**n))
    s = (1 / (1 - q) ** 2 - lam) * pair - 1 / (q * tail)
    return r, s


def test_proof_prefactors():
    rng = random.Random(5)
    done = 0
    while done < 5:
        n = rng.choice([3, 5, 7])
        a = rng.choice([F(2), F(3), F(-2), F(5, 3), F(-7, 2)])
        qv = rng.choice([F(3), F(5), F(-4), F(5, 2), F(-7, 3)])
        if qv == a:      # pole of (1 - q/a)
            continue
        done += 1
        r_want, s_want = _rs_oracle(n, a, qv)
        assert proof_prefactor("RQ", n, a)(qv) == r_want
        assert proof_prefactor("SQ", n, a)(qv) == s_want
        assert rq(n, a)(qv) == r_want and sq(n, a)(qv) == s_want
    with pytest.raises(InadmissibleError):
        proof_prefactor("SQ", 3, 1)


def test_thm11_term_at_unit_parameters():
    # at a = b = c = d = 1 the six-fold term keeps two extra (q^-1;q^2)_k/(q^2;q^2)_k
    # ratios and three extra powers of q compared with the four-fold term
    ones = {"a": 1, "b": 1, "c": 1, "d": 1}
    for n in (3, 5):
        for k in range((n + 1) // 2 + 1):
            extra = L({3 * k: 1}) * (qpoch(mono(1, -1), 2, k) / qpoch(mono(1, 2), 2, k)) ** 2
            assert catalog_term("THM11", "LHS", k, n, ones) == catalog_term("EQ13", "LHS", k, n) * extra


@pytest.mark.parametrize("tid", ["EQ12", "THM11", "THM31", "COR15"])
def test_two_evaluation_orders_agree(tid):
    task = CATALOG[tid]
    s = {k: v for k, v in SAMPLES4[1].items() if k in task.all_params()}
    n = 5
    fast = catalog_sum(tid, "LHS", n, "nm1", s)
    slow = RatFn(LaurentPoly.const(0))
    for k in range(n):
        slow = slow + catalog_term(tid, "LHS", k, n, s)
    assert fast == slow


def test_aliases_resolve():
    assert resolve("thm-a") == "THM11" and resolve("thm-b") == "THM12" and resolve("thm-c") == "THM31"
    assert resolve("gen-cdq3-ab") == "GEN-CDQ3-AB"
    with pytest.raises(KeyError):
        resolve("nope")
