"""Divisibility of exact rational-function differences by polynomial moduli.

"A == B (mod P)" is read with p-integrality: A - B in lowest terms must have
a denominator coprime to P and a numerator divisible by P.  Powers of q are
units because every modulus has nonzero constant term.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exact import intpoly
from .exact.cyclotomic import cyclotomic_ints
from .exact.factored import FactoredFrac, fsum, split_poly
from .exact.laurent import ONE, LaurentPoly, poly_divrem, poly_gcd
from .exact.ratfn import RatFn
from .qseries import catalog
from .qseries.prefactors import rq, sq
from .qseries.terms import (InadmissibleError, ModFactor, eval_sum, eval_term, poch_factored,
                            render_modulus)

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class Verdict:
    status: str
    cofactor: object = None          # Delta / P on PASS (RatFn or FactoredFrac)
    evidence: LaurentPoly = ONE      # gcd(reduced denominator of Delta, P)
    diagnostics: str = ""
    modulus: str = ""
    value: Optional[Fraction] = None
    details: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status == PASS

    def digest(self):
        """Short stable fingerprint of the witness."""
        h = hashlib.sha256()
        h.update(self.status.encode())
        c = self.cofactor
        if isinstance(c, FactoredFrac):
            h.update(repr((c.scalar, c.shift, c.num, sorted(c.atoms.items()))).encode())
        elif c is not None:
            h.update(str(c).encode())
        h.update(str(self.evidence).encode())
        if self.value is not None:
            h.update(str(self.value).encode())
        for d in self.details:
            h.update(d.digest().encode() if isinstance(d, Verdict) else str(d).encode())
        return h.hexdigest()[:16]


# Moduli.

class Modulus:
    """An expanded modulus together with its primitive integer factors."""

    def __init__(self, recipe, n, params=None):
        params = params or {}
        self.recipe = tuple(recipe)
        self.n = n
        self.factors = []            # (primitive int tuple, multiplicity)
        scale = Fraction(1)
        for f in self.recipe:
            if f.exponent < 1:
                raise ValueError("modulus exponents must be positive")
            poly, s = _mod_factor(f.kind, n, params)
            self.factors.append((poly, f.exponent))
            scale *= s**f.exponent
        self.int_poly = tuple(intpoly.product(
            [intpoly.power(list(p), e) for p, e in self.factors]))
        self.scale = scale
        self.poly = LaurentPoly.from_ints(self.int_poly, 0, scale)

    def render(self):
        return render_modulus(self.recipe)


def _param_value(params, name):
    if name not in params:
        raise InadmissibleError(f"modulus needs parameter {name}")
    v = Fraction(params[name])
    if v == 0:
        raise InadmissibleError(f"modulus needs {name} != 0")
    return v


def _mod_factor(kind, n, params):
    """Return (primitive int tuple, rational scale) with poly = scale * ints."""
    if kind == "PHI":
        return cyclotomic_ints(n), Fraction(1)
    if kind == "QINT":
        return (1,) * n, Fraction(1)
    if kind in ("ONE_MINUS_AQN", "A_MINUS_QN", "B_MINUS_QN"):
        v = _param_value(params, "b" if kind == "B_MINUS_QN" else "a")
        lp = (LaurentPoly.from_dict({0: 1, n: -v}) if kind == "ONE_MINUS_AQN"
              else LaurentPoly.from_dict({0: v, n: -1}))
        scale, ints = lp.to_ints()
        return tuple(ints), scale
    raise ValueError(f"unknown modulus factor {kind!r}")


def modulus_build(recipe, n, params=None):
    """Expanded modulus polynomial for a recipe of ModFactor values."""
    return Modulus(recipe, n, params).poly


# Deciding congruences.

def congruent(delta, P):
    """Verdict for delta == 0 (mod P), delta a RatFn and P an ordinary polynomial."""
    if not isinstance(delta, RatFn):
        delta = RatFn(delta)
    if P.is_zero() or P.min_exp != 0:
        raise ValueError("modulus must be a nonzero polynomial with nonzero constant term")
    if delta.is_zero():
        return Verdict(PASS, RatFn.const(0), ONE, "difference is exactly zero", str(P))
    g = poly_gcd(delta.den, P)
    if g.degree() > 0:
        return Verdict(FAIL, None, g, f"denominator shares {g} with the modulus", str(P))
    shift = delta.num.min_exp
    quo, rem = poly_divrem(delta.num.shift(-shift), P)
    if not rem.is_zero():
        return Verdict(FAIL, None, g, "numerator not divisible by the modulus", str(P))
    return Verdict(PASS, RatFn(quo.shift(shift), delta.den), g, "", str(P))


@lru_cache(maxsize=200000)
def _p_part(atom, P):
    """Split atom = part * rest where part collects every factor shared with P."""
    part = [1]
    rest = list(atom)
    g = intpoly.gcd_poly(rest, list(P))
    while len(g) > 1:
        part = intpoly.mul(part, g)
        rest = intpoly.divexact(rest, g)
        g = intpoly.gcd_poly(rest, list(P))
    return tuple(part), tuple(rest)


def congruent_factored(delta, modulus):
    """Fast verdict for a factored difference against a Modulus.

    Only the small P-sharing pieces of the denominator are ever divided
    into the expanded numerator, so no large gcd is computed.
    """
    text = modulus.render()
    if delta.is_zero():
        return Verdict(PASS, FactoredFrac(0), ONE, "difference is exactly zero", text)
    P = modulus.int_poly
    shared = []
    rest_atoms = {}
    unit_scale = Fraction(1)
    for atom, m in delta.atoms.items():
        if m >= 0:
            continue
        part, rest = _p_part(atom, P)
        if len(part) > 1:
            shared.append((part, -m))
            if len(rest) == 1:
                unit_scale *= Fraction(rest[0]) ** m
            else:
                unit, s, pieces, leftover = split_poly(rest)
                unit_scale *= Fraction(unit) ** m
                for key, mult in pieces:
                    rest_atoms[key] = rest_atoms.get(key, 0) + m * mult
                if len(leftover) > 1:
                    rest_atoms[leftover] = rest_atoms.get(leftover, 0) + m
        else:
            rest_atoms[atom] = rest_atoms.get(atom, 0) + m
    N = delta.numerator_ints()
    for part, mult in shared:
        for i in range(mult):
            q = intpoly.divexact(N, _positive(part))
            if q is None:
                ev = _evidence(N, part, mult - i, P)
                return Verdict(FAIL, None, ev,
                               f"reduced denominator shares {ev} with the modulus", text)
            N = q
    for poly, mult in modulus.factors:
        for _ in range(mult):
            q = intpoly.divexact(N, _positive(poly))
            if q is None:
                return Verdict(FAIL, None, ONE,
                               f"numerator not divisible by factor {LaurentPoly(poly)}", text)
            N = q
    # We divided by the positive forms of the factors: their product is sign * P / scale.
    sign = 1
    for poly, mult in modulus.factors:
        if poly[-1] < 0:
            sign *= (-1) ** mult
    scalar = delta.scalar * sign * unit_scale / modulus.scale
    cof = FactoredFrac(scalar, delta.shift, (1,), rest_atoms) * FactoredFrac.from_ints(N, split=False)
    return Verdict(PASS, cof, ONE, "", text)


def _positive(poly):
    return list(poly) if poly[-1] > 0 else [-c for c in poly]


def _evidence(N, part, mult, P):
    num = LaurentPoly(N)
    piece = LaurentPoly(part)
    leftover = piece ** (mult - 1) * poly_divrem(piece, poly_gcd(piece, num))[0]
    return poly_gcd(leftover, LaurentPoly(P))


def recheck(delta, modulus, verdict):
    """Soundness: P * cofactor == Delta exactly."""
    if not verdict.passed:
        return False
    P = FactoredFrac.from_laurent(modulus.poly, split=False)
    return (P * verdict.cofactor - delta).is_zero()


# Catalog targets.

def _task_delta(task, n, m_mode, sample):
    lhs = eval_sum(task.lhs, n, sample, m_mode)
    if task.rhs is None:
        return lhs
    return lhs - eval_sum(task.rhs, n, sample, m_mode)


def verify_task(task, n, m_mode="half", sample=None, return_delta=False):
    sample = dict(sample or {})
    try:
        task.check_n(n)
    except InadmissibleError as exc:
        v = Verdict(SKIPPED, diagnostics=str(exc), modulus=render_modulus(task.modulus))
        return (v, None, None) if return_delta else v
    task.check_sample(sample)
    modulus = Modulus(task.modulus, n, sample)
    delta = _task_delta(task, n, m_mode, sample)
    v = congruent_factored(delta, modulus)
    return (v, delta, modulus) if return_delta else v


def verify_target(target_id, n, m_mode="half", sample=None):
    """Delta = LHS - RHS of a catalog target, checked against its modulus."""
    tid = catalog.resolve(target_id)
    if tid in catalog.SPECIAL_STEPS:
        return proof_step_check(tid, n, sample)
    return verify_task(catalog.CATALOG[tid], n, m_mode, sample)


# Watson's 8phi7 transformation as an exact identity.

def _poch_q(c, e, k):
    return poch_factored(c, e, k, step=1)


def watson_sides(n_trunc, a, b, c, d, e):
    a, b, c, d, e = (Fraction(x) for x in (a, b, c, d, e))
    N = n_trunc
    lhs_terms = []
    z = a * a / (b * c * d * e)
    for k in range(N + 1):
        top = (_poch_q(a, 0, k) * _poch_q(b, 0, k) * _poch_q(c, 0, k) * _poch_q(d, 0, k)
               * _poch_q(e, 0, k) * _poch_q(1, -N, k))
        bot = (_poch_q(1, 1, k) * _poch_q(a / b, 1, k) * _poch_q(a / c, 1, k)
               * _poch_q(a / d, 1, k) * _poch_q(a / e, 1, k) * _poch_q(a, N + 1, k))
        # (q sqrt(a), -q sqrt(a))_k / (sqrt(a), -sqrt(a))_k = (1 - a q^2k) / (1 - a)
        wp = FactoredFrac.binomial(a, 2 * k) / (1 - a)
        lhs_terms.append(top / bot * wp * FactoredFrac(z**k, (N + 2) * k))
    pre = (_poch_q(a, 1, N) * _poch_q(a / (d * e), 1, N)
           / (_poch_q(a / d, 1, N) * _poch_q(a / e, 1, N)))
    rhs_terms = []
    for k in range(N + 1):
        top = _poch_q(a / (b * c), 1, k) * _poch_q(d, 0, k) * _poch_q(e, 0, k) * _poch_q(1, -N, k)
        bot = (_poch_q(1, 1, k) * _poch_q(a / b, 1, k) * _poch_q(a / c, 1, k)
               * _poch_q(d * e / a, -N, k))
        rhs_terms.append(top / bot * FactoredFrac(1, k))
    return fsum(lhs_terms), pre * fsum(rhs_terms)


def watson_identity_check(n_trunc, a, b, c, d, e):
    """PASS iff both sides of the terminating 8phi7 transformation agree exactly."""
    if n_trunc < 0:
        raise ValueError("n_trunc must be nonnegative")
    try:
        lhs, rhs = watson_sides(n_trunc, a, b, c, d, e)
    except ZeroDivisionError as exc:
        raise InadmissibleError(f"degenerate Watson parameters: {exc}") from exc
    diff = lhs - rhs
    if diff.is_zero():
        return Verdict(PASS, FactoredFrac(0), ONE, "exact identity", "0")
    return Verdict(FAIL, None, ONE, "sides differ", "0")


# Lemma checks on the four-parameter summand.

def beta(k, n, sample):
    return eval_term(catalog.WEI_TERM, k, n, sample)


def _aggregate(parts, modulus_text, note=""):
    status = PASS if all(p.passed for p in parts) else FAIL
    bad = [i for i, p in enumerate(parts) if not p.passed]
    diag = note or (f"failed at k = {bad}" if bad else f"{len(parts)} checks")
    return Verdict(status, None, ONE, diag, modulus_text, details=parts)


def _require_odd(n):
    if n % 2 == 0 or n < 3:
        raise InadmissibleError(f"n must be odd and > 1, got {n}")


def lemma_a_symmetry_check(n, sample):
    """beta((n+1)/2 - k) + beta(k) == 0 (mod Phi_n) for 0 <= k <= (n+1)/2."""
    _require_odd(n)
    h = (n + 1) // 2
    mod = Modulus((ModFactor("PHI"),), n)
    parts = [congruent_factored(beta(h - k, n, sample) + beta(k, n, sample), mod)
             for k in range(h + 1)]
    return _aggregate(parts, mod.render())


def central_term_check(n, sample):
    """The central term beta((n+1)/4) is divisible by [n] when (n+1)/2 is even."""
    _require_odd(n)
    if ((n + 1) // 2) % 2:
        return Verdict(SKIPPED, diagnostics="(n+1)/2 is odd; no central term", modulus="[n]")
    mod = Modulus((ModFactor("QINT"),), n)
    return congruent_factored(beta((n + 1) // 4, n, sample), mod)


def lemma_b_check(n, m_mode, sample):
    """The four-parameter left-hand sum alone is divisible by [n]."""
    _require_odd(n)
    task = catalog.CATALOG["THM11"]
    mod = Modulus((ModFactor("QINT"),), n)
    return congruent_factored(eval_sum(task.lhs, n, sample, m_mode), mod)


# Proof steps that are not sum congruences.

def _phi_mod(n):
    return Modulus((ModFactor("PHI"),), n)


def _special_param(sample, name, forbidden):
    if not sample or name not in sample:
        raise InadmissibleError(f"step needs parameter {name}")
    v = Fraction(sample[name])
    if v in forbidden:
        raise InadmissibleError(f"{name} = {v} is not admissible here")
    return v


def gs54_check(n, x):
    """(xq^-1;q^2)_{h-k}/(q^2/x;q^2)_{h-k} == (-x)^{h-2k} (xq^-1;q^2)_k/(q^2/x;q^2)_k q^{(n-1)^2/4+3k-1}."""
    h = (n + 1) // 2
    mod = _phi_mod(n)

    def ratio(j):
        return poch_factored(x, -1, j) / poch_factored(1 / x, 2, j)

    parts = []
    for k in range(h + 1):
        rhs = FactoredFrac((-x) ** (h - 2 * k), (n - 1) ** 2 // 4 + 3 * k - 1) * ratio(k)
        parts.append(congruent_factored(ratio(h - k) - rhs, mod))
    return _aggregate(parts, mod.render())


def _guo_rhs(n, a, qexp):
    m = (n - 1) // 2
    c = (-1) ** m * (1 - a**n) / ((1 - a) * a**m)
    return FactoredFrac(c, qexp)


def guo_check(which, n, a):
    m = (n - 1) // 2
    if which == 1:
        lhs = poch_factored(a, 2, m) * poch_factored(1 / a, 2, m)
        rhs = _guo_rhs(n, a, -((n - 1) ** 2) // 4)
    else:
        lhs = poch_factored(a, 1, m) * poch_factored(1 / a, 1, m)
        rhs = _guo_rhs(n, a, (1 - n * n) // 4)
    mod = _phi_mod(n)
    return congruent_factored(lhs - rhs, mod)


def wei_g_sides(n, a):
    h = (n + 1) // 2
    tail = poch_factored(1, n - 1, 2)
    lhs = fsum([
        FactoredFrac(1, 5) * poch_factored(1, -1, h) ** 2
        / (poch_factored(1, -1, 2) * poch_factored(1 / a, 2, h) * poch_factored(a, 2, h)),
        -(FactoredFrac(1, (n + 7) // 2) / tail),
    ])
    lam = (FactoredFrac(n * (1 - a) * a ** ((n - 1) // 2), (n + 9) // 2)
           / (FactoredFrac.binomial(1 / a, 1) * FactoredFrac.binomial(a, 1) * (1 - a**n)))
    rhs = fsum([FactoredFrac(1, (n + 9) // 2) / FactoredFrac.binomial(1, 1) ** 2, -lam])
    return lhs, rhs


def wei_g_check(n, a):
    lhs, rhs = wei_g_sides(n, a)
    return congruent_factored(lhs - rhs, _phi_mod(n))


def proof_step_check(step, n, sample, m_mode="half"):
    """Check one displayed proof step at n for a parameter sample."""
    step = catalog.resolve(step)
    _require_odd(n)
    sample = dict(sample or {})
    if step in ("WEI-E", "WEI-F", "WEI-H"):
        return verify_task(catalog.CATALOG[step], n, m_mode, sample)
    if step == "GS54":
        return gs54_check(n, _special_param(sample, "x", {0, 1, -1}))
    if step == "GUO-L1":
        return guo_check(1, n, _special_param(sample, "a", {0, 1}))
    if step == "GUO-L2":
        return guo_check(2, n, _special_param(sample, "a", {0, 1}))
    if step == "WEI-G":
        return wei_g_check(n, _special_param(sample, "a", {0, 1}))
    raise ValueError(f"{step} is not a proof step")


def rq_sq_consistency(n, a):
    """R_q(a,n) - q^((n+9)/2) S_q(a,n) == 0 (mod Phi_n)."""
    diff = rq(n, a) - FactoredFrac(1, (n + 9) // 2) * sq(n, a)
    return congruent_factored(diff, _phi_mod(n))


# The a -> 1 limit.

def lhopital_limit_check(n, qval):
    """Cancel the (1-a)^2 pole at q = qval and compare the a = 1 value with the closed form."""
    _require_odd(n)
    q = Fraction(qval)
    if q in (0, 1, -1) or q**n == 1:
        raise InadmissibleError(f"q = {q} is not admissible")
    A = RatFn(LaurentPoly.q())
    one = RatFn.const(1)
    lam_num = RatFn(LaurentPoly.from_dict({0: n, 1: -n}).shift((n - 1) // 2))
    lam_den = ((one - RatFn(LaurentPoly.monomial(q, -1)))
               * (one - A * q) * RatFn(LaurentPoly.from_dict({0: 1, n: -1})))
    brace = RatFn.const(1 / (1 - q) ** 2) - lam_num / lam_den
    pair = RatFn(LaurentPoly.from_dict({0: 1, 1: -q**n})) * RatFn(LaurentPoly.from_dict({0: -q**n, 1: 1}))
    F = brace * pair / RatFn(LaurentPoly.from_dict({0: 1, 1: -2, 2: 1}))
    if F.den(1) == 0:
        return Verdict(FAIL, F, ONE, "residual pole at a = 1", value=None)
    got = F(1)
    qn = (1 - q**n) / (1 - q)
    want = qn**2 * (n * n * (1 - q) ** 2 - (1 + 22 * q + q * q)) / (24 * (1 - q) ** 2)
    status = PASS if got == want else FAIL
    return Verdict(status, F, ONE, f"limit {got}, closed form {want}", value=got)
