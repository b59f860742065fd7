"""Declarative description of truncated q-hypergeometric sums.

A summand or prefactor is a ``Term``: a canonical product of factors, each
raised to an integer power.  Every Pochhammer symbol has step q**2.  Terms
are plain frozen data, so the built-in catalog and the parsed DSL produce
values that compare equal when they describe the same display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from ..exact.factored import FactoredFrac, fsum
from .nexpr import HALF, NM1, TAIL, NExpr

K = "k"
PARAM_NAMES = ("a", "b", "c", "d")

Length = Union[str, NExpr]


class InadmissibleError(ValueError):
    """Raised when n or a parameter sample violates a statement's hypotheses."""


@dataclass(frozen=True)
class Monomial:
    coeff: Fraction = Fraction(1)
    params: tuple = ()          # sorted ((name, exponent), ...), exponents nonzero
    qexp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")
        merged = {}
        for name, e in self.params:
            merged[name] = merged.get(name, 0) + e
        object.__setattr__(self, "params", tuple(sorted((k, e) for k, e in merged.items() if e)))

    def specialize(self, params):
        c = self.coeff
        for name, e in self.params:
            if name not in params:
                raise KeyError(f"parameter {name!r} is not assigned")
            v = Fraction(params[name])
            if v == 0:
                raise InadmissibleError(f"parameter {name} must be nonzero")
            c *= v**e
        return c, self.qexp

    def names(self):
        return {name for name, _ in self.params}

    def __mul__(self, other):
        return Monomial(self.coeff * other.coeff, self.params + other.params, self.qexp + other.qexp)

    def __pow__(self, e):
        return Monomial(self.coeff**e, tuple((k, m * e) for k, m in self.params), self.qexp * e)

    def render(self):
        parts = []
        for name, e in self.params:
            parts.append(name if e == 1 else f"{name}^{e}")
        if self.qexp:
            parts.append("q" if self.qexp == 1 else f"q^{self.qexp}")
        c = self.coeff
        if not parts:
            return str(c)
        body = "*".join(parts)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c}*{body}"


def mono(coeff=1, qexp=0, **params):
    return Monomial(Fraction(coeff), tuple(params.items()), qexp)


# Factors.  ``power`` is the integer exponent; negative means denominator.

@dataclass(frozen=True)
class Const:
    value: Fraction

    def render(self):
        return str(self.value)


@dataclass(frozen=True)
class QInt:
    """[k_coeff*k + base(n)]"""
    k_coeff: int
    base: NExpr
    power: int = 1

    def render_body(self):
        parts = []
        if self.k_coeff:
            parts.append("k" if self.k_coeff == 1 else ("-k" if self.k_coeff == -1 else f"{self.k_coeff}*k"))
        b = self.base
        if b != NExpr():
            txt = b.render()
            if parts and not txt.startswith("-"):
                txt = "+" + txt
            parts.append(txt)
        return f"qint({''.join(parts) or '0'})"


@dataclass(frozen=True)
class Poch:
    """(base; q^2)_length"""
    base: Monomial
    length: Length
    power: int = 1

    def render_body(self):
        ln = "k" if self.length == K else self.length.render()
        return f"poch({self.base.render()}; q^2; {ln})"


@dataclass(frozen=True)
class MonoPow:
    """mono ** exponent, exponent either k or a polynomial in n."""
    mono: Monomial
    exponent: Length

    power = 1

    def is_sign(self):
        return self.mono == Monomial(Fraction(-1)) and self.exponent == K

    def render_body(self):
        if self.is_sign():
            return "(-1)^k"
        ex = "k" if self.exponent == K else self.exponent.render(wrap=True)
        if self.exponent != K and self.exponent == NExpr(1):
            m = self.mono
            if m.coeff == 1 and len(m.params) + (1 if m.qexp else 0) == 1:
                return m.render()
        return f"({self.mono.render()})^{ex}"


@dataclass(frozen=True)
class QQuad:
    """q ** (alpha*k**2 + beta*k)"""
    alpha: int
    beta: int

    power = 1

    def render_body(self):
        parts = []
        if self.alpha:
            parts.append("k^2" if self.alpha == 1 else f"{self.alpha}*k^2")
        if self.beta:
            b = "k" if abs(self.beta) == 1 else f"{abs(self.beta)}*k"
            if self.beta < 0:
                parts.append("-" + b)
            else:
                parts.append(("+" if parts else "") + b)
        return f"q^({''.join(parts) or '0'})"


NAMED = ("omega", "theta", "rq", "sq")


@dataclass(frozen=True)
class Named:
    name: str
    power: int = 1

    def render_body(self):
        return self.name


_ORDER = {Const: 0, MonoPow: 1, QInt: 2, Poch: 3, QQuad: 4, Named: 5}


def _sort_key(f):
    if isinstance(f, MonoPow):
        return (_ORDER[MonoPow], 0 if f.is_sign() else 1, f.mono.render(),
                "" if f.exponent == K else f.exponent.render())
    if isinstance(f, QInt):
        return (_ORDER[QInt], f.k_coeff, f.base.coeffs)
    if isinstance(f, Poch):
        is_k = f.length == K
        return (_ORDER[Poch], 0 if is_k else 1,
                "" if is_k else f.length.render(), f.base.qexp, f.base.render())
    if isinstance(f, QQuad):
        return (_ORDER[QQuad], f.alpha, f.beta)
    if isinstance(f, Named):
        return (_ORDER[Named], NAMED.index(f.name))
    return (_ORDER[Const],)


def make_term(factors):
    """Canonical tuple of factors: like factors merged, zero powers dropped, sorted."""
    const = Fraction(1)
    powered = {}
    monos = {}
    quad = [0, 0]
    for f in factors:
        if isinstance(f, Const):
            const *= f.value
        elif isinstance(f, MonoPow):
            prev = monos.get(f.exponent)
            if prev is None:
                monos[f.exponent] = {f.mono: 1}
            else:
                prev[f.mono] = prev.get(f.mono, 0) + 1
        elif isinstance(f, QQuad):
            quad[0] += f.alpha
            quad[1] += f.beta
        else:
            key = (type(f),) + tuple(getattr(f, s) for s in f.__dataclass_fields__ if s != "power")
            powered[key] = powered.get(key, 0) + f.power
    out = []
    if const == 0:
        raise ValueError("a term cannot contain the constant 0")
    if const != 1:
        out.append(Const(const))
    for exponent, group in monos.items():
        for m, count in group.items():
            m = m**count
            if m != Monomial():
                out.append(MonoPow(m, exponent))
    for key, p in powered.items():
        if p:
            cls = key[0]
            out.append(cls(*key[1:], power=p))
    if quad != [0, 0]:
        out.append(QQuad(*quad))
    out.sort(key=_sort_key)
    return tuple(out)


def render_term(term):
    if not term:
        return "1"
    num, den = [], []
    for f in term:
        if isinstance(f, Const):
            num.append(f.render())
            continue
        body = f.render_body()
        p = f.power
        if p > 0:
            num.append(body if p == 1 else f"{body}^{p}")
        else:
            den.append(body if p == -1 else f"{body}^{-p}")
    text = " * ".join(num) if num else "1"
    for d in den:
        text += f" / {d}"
    return text


def term_params(term):
    names = set()
    for f in term:
        if isinstance(f, (Poch, MonoPow)):
            names |= (f.base if isinstance(f, Poch) else f.mono).names()
        elif isinstance(f, Named):
            names |= {"theta": {"a", "b"}, "rq": {"a"}, "sq": {"a"}}.get(f.name, set())
    return names


# Sum bounds.
BOUND_M = "M"
BOUND_ALIASES = {"(n+1)/2": HALF, "n-1": NM1, "(n-3)/2": TAIL}


@dataclass(frozen=True)
class SumSpec:
    """sum_{k=0}^{upper} term(k), times prefactor.

    ``upper`` is ``"M"`` (selectable between (n+1)/2 and n-1), one of the
    fixed n-dependent bounds, or a plain integer (as NExpr constant).
    """
    upper: Union[str, NExpr]
    term: tuple
    prefactor: tuple = ()

    def resolve_upper(self, n, m_mode="half"):
        if self.upper == BOUND_M:
            if m_mode == "half":
                return HALF(n)
            if m_mode == "nm1":
                return NM1(n)
            raise ValueError(f"unknown M mode {m_mode!r}")
        return self.upper(n)

    def params(self):
        return term_params(self.term) | term_params(self.prefactor)

    def render(self):
        up = self.upper if self.upper == BOUND_M else self.upper.render()
        text = f"sum k=0..{up}: {render_term(self.term)}"
        if self.prefactor:
            text += f"\n  prefactor: {render_term(self.prefactor)}"
        return text


# Modulus factors.
MOD_KINDS = ("PHI", "QINT", "ONE_MINUS_AQN", "A_MINUS_QN", "B_MINUS_QN")


@dataclass(frozen=True)
class ModFactor:
    kind: str
    exponent: int = 1

    def render(self):
        body = {"PHI": "Phi(n)", "QINT": "[n]", "ONE_MINUS_AQN": "(1-a*q^n)",
                "A_MINUS_QN": "(a-q^n)", "B_MINUS_QN": "(b-q^n)"}[self.kind]
        return body if self.exponent == 1 else f"{body}^{self.exponent}"


def modulus_params(recipe):
    names = set()
    for f in recipe:
        if f.kind in ("ONE_MINUS_AQN", "A_MINUS_QN"):
            names.add("a")
        elif f.kind == "B_MINUS_QN":
            names.add("b")
    return names


def render_modulus(recipe):
    return " * ".join(f.render() for f in recipe) or "1"


@dataclass(frozen=True)
class CongruenceTask:
    """LHS == RHS modulo a product of polynomial factors, for admissible odd n."""
    name: str
    lhs: SumSpec
    rhs: Optional[SumSpec]
    modulus: tuple
    params: tuple = ()
    n_min: int = 3
    exclude: tuple = field(default=())   # ((param, value), ...) forbidden values

    def all_params(self):
        return tuple(sorted(set(self.params) | self.lhs.params()
                            | (self.rhs.params() if self.rhs else set())
                            | modulus_params(self.modulus)))

    def has_m(self):
        return self.lhs.upper == BOUND_M or (self.rhs is not None and self.rhs.upper == BOUND_M)

    def check_n(self, n):
        if n % 2 == 0 or n < self.n_min:
            raise InadmissibleError(f"{self.name} needs odd n >= {self.n_min}, got {n}")

    def check_sample(self, sample):
        for name in self.all_params():
            if name not in sample:
                raise InadmissibleError(f"{self.name}: parameter {name} not assigned")
            if Fraction(sample[name]) == 0:
                raise InadmissibleError(f"{self.name}: parameter {name} must be nonzero")
        for name, value in self.exclude:
            if name in sample and Fraction(sample[name]) == Fraction(value):
                raise InadmissibleError(f"{self.name}: {name} = {value} is excluded")


# Evaluation into factored form.

@lru_cache(maxsize=65536)
def _binomial(c, e):
    return FactoredFrac.binomial(c, e)


def _length(ln, k, n):
    if ln == K:
        if k is None:
            raise ValueError("length k used outside a sum")
        return k
    return ln(n)


def qint_factored(m):
    """[m] = (1 - q**m)/(1 - q) for any integer m, as a factored fraction."""
    if m == 0:
        return FactoredFrac(0)
    return _binomial(Fraction(1), m) / _binomial(Fraction(1), 1)


def poch_factored(c, e, length, step=2):
    """(c*q**e; q**step)_length."""
    if length < 0:
        raise ValueError("negative Pochhammer length")
    out = FactoredFrac(1)
    for j in range(length):
        f = _binomial(Fraction(c), e + step * j)
        if f.is_zero():
            return FactoredFrac(0)
        out = out * f
    return out


def eval_factor(f, k, n, params):
    if isinstance(f, Const):
        return FactoredFrac(f.value)
    if isinstance(f, QInt):
        m = f.k_coeff * (k or 0) + f.base(n)
        if f.k_coeff and k is None:
            raise ValueError("qint in k used outside a sum")
        v = qint_factored(m)
        if v.is_zero() and f.power < 0:
            raise ZeroDivisionError(f"[{m}] = 0 in a denominator")
        return v**f.power
    if isinstance(f, Poch):
        c, e = f.base.specialize(params)
        v = poch_factored(c, e, _length(f.length, k, n))
        if v.is_zero() and f.power < 0:
            raise ZeroDivisionError(f"vanishing Pochhammer {f.render_body()} in a denominator")
        return v**f.power
    if isinstance(f, MonoPow):
        c, e = f.mono.specialize(params)
        x = _length(f.exponent, k, n)
        return FactoredFrac(c**x, e * x)
    if isinstance(f, QQuad):
        if k is None:
            raise ValueError("q^(quadratic in k) used outside a sum")
        return FactoredFrac(1, f.alpha * k * k + f.beta * k)
    if isinstance(f, Named):
        from . import prefactors
        return prefactors.named_factored(f.name, n, params) ** f.power
    raise TypeError(f"unknown factor {f!r}")


def eval_term(term, k, n, params):
    out = FactoredFrac(1)
    for f in term:
        v = eval_factor(f, k, n, params)
        if v.is_zero():
            if getattr(f, "power", 1) < 0:
                raise ZeroDivisionError("zero factor in a denominator")
            return FactoredFrac(0)
        out = out * v
    return out


def eval_sum(spec, n, params, m_mode="half"):
    """Exact value of a SumSpec at n, in factored form."""
    upper = spec.resolve_upper(n, m_mode)
    total = fsum([eval_term(spec.term, k, n, params) for k in range(upper + 1)])
    if spec.prefactor and not total.is_zero():
        total = total * eval_term(spec.prefactor, None, n, params)
    return total
