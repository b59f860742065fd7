"""A small text format for truncated q-hypergeometric congruence tasks (``.qhs``).

Example::

    verify "quartic"
    lhs: sum k=0..M: qint(4*k-1) * poch(q^-1; q^2; k)^4 / poch(q^2; q^2; k)^4 * (q^4)^k
    rhs: 0
    modulus: [n] * Phi(n)^2

Parsing yields a ``SpecTask`` whose sums are the same frozen term values the
built-in catalog uses, so a transcription can be compared structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .qseries.nexpr import HALF, NM1, TAIL, NExpr
from .qseries.terms import (BOUND_M, K, NAMED, PARAM_NAMES, CongruenceTask, Const, ModFactor,
                            Monomial, MonoPow, Named, Poch, QInt, QQuad, SumSpec, make_term,
                            modulus_params, render_modulus, term_params)


class ParseError(Exception):
    def __init__(self, text, offset, expected, message):
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.expected = frozenset(expected)
        self.message = message
        exp = f" (expected {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"line {self.line}, column {self.column}: {message}{exp}")


class SpecSemanticError(ValueError):
    """A well-formed spec that does not describe a usable task."""


# Lexing.

PUNCT = ("..", "!=", "(", ")", "[", "]", "^", "*", "/", "+", "-", ":", ";", ",", "=", ">")


@dataclass(frozen=True)
class Token:
    kind: str      # INT, IDENT, STRING, EOF or the punctuation itself
    text: str
    offset: int


def tokenize(text):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "#":
            j = text.find("\n", i)
            i = n if j < 0 else j
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("INT", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("IDENT", text[i:j], i))
            i = j
        elif ch == '"':
            j = text.find('"', i + 1)
            if j < 0 or "\n" in text[i:j]:
                raise ParseError(text, i, ['"'], "unterminated string")
            out.append(Token("STRING", text[i + 1:j], i))
            i = j + 1
        else:
            for p in PUNCT:
                if text.startswith(p, i):
                    out.append(Token(p, p, i))
                    i += len(p)
                    break
            else:
                raise ParseError(text, i, [], f"unexpected character {ch!r}")
    out.append(Token("EOF", "", n))
    return out


# The parsed task.

@dataclass(frozen=True)
class SpecTask:
    name: str
    params: Optional[tuple]          # declared domain, None when omitted
    n_min: int
    exclude: tuple                   # ((param, value), ...)
    lhs: SumSpec
    rhs: Optional[SumSpec]
    modulus: tuple


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # helpers
    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, ahead=1):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def error(self, expected, message=None, tok=None):
        tok = tok or self.tok
        shown = tok.text or "end of input"
        raise ParseError(self.text, tok.offset, expected, message or f"unexpected {shown!r}")

    def at(self, kind, text=None):
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_word(self, word):
        return self.at("IDENT", word)

    def take(self, kind, text=None):
        if not self.at(kind, text):
            self.error([text or kind])
        t = self.tok
        self.i += 1
        return t

    def word(self, word):
        return self.take("IDENT", word)

    def integer(self, signed=False):
        neg = False
        if signed and self.at("-"):
            self.i += 1
            neg = True
        v = int(self.take("INT").text)
        return -v if neg else v

    # task
    def task(self):
        self.word("verify")
        name = "spec"
        if self.at("STRING"):
            name = self.take("STRING").text
        params = None
        n_min, exclude = 3, []
        if self.at_word("params"):
            self.i += 1
            self.take(":")
            params = [self.param_name()]
            while self.at(","):
                self.i += 1
                params.append(self.param_name())
            params = tuple(sorted(set(params)))
        if self.at_word("where"):
            self.i += 1
            n_min, exclude = self.conditions()
        self.word("lhs")
        self.take(":")
        lhs = self.sum()
        self.word("rhs")
        self.take(":")
        if self.at("INT", "0"):
            self.i += 1
            rhs = None
        else:
            rhs = self.sum()
        self.word("modulus")
        self.take(":")
        modulus = self.modexpr()
        self.take("EOF")
        return SpecTask(name, params, n_min, tuple(sorted(exclude)), lhs, rhs, modulus)

    def param_name(self):
        t = self.tok
        if t.kind != "IDENT" or t.text not in PARAM_NAMES:
            self.error(PARAM_NAMES, f"unknown parameter {t.text!r}" if t.kind == "IDENT" else None)
        self.i += 1
        return t.text

    def conditions(self):
        n_min, exclude = 3, []
        while True:
            if self.at_word("n"):
                self.i += 1
                self.take(">")
                bound = self.integer()
                n_min = max(3, bound + 1 + (bound % 2 == 1))
            else:
                name = self.param_name()
                self.take("!=")
                exclude.append((name, self.rational()))
            if not self.at(","):
                return n_min, exclude
            self.i += 1

    def rational(self):
        v = Fraction(self.integer(signed=True))
        if self.at("/") and self.peek().kind == "INT":
            self.i += 1
            v /= int(self.take("INT").text)
        return v

    # sums
    def sum(self):
        self.word("sum")
        self.word("k")
        self.take("=")
        self.take("INT", "0")
        self.take("..")
        upper = self.bound()
        self.take(":")
        term = self.term()
        pre = ()
        if self.at_word("prefactor"):
            self.i += 1
            self.take(":")
            pre = self.term(allow_k=False)
        return SumSpec(upper, term, pre)

    def bound(self):
        if self.at_word("M"):
            self.i += 1
            return BOUND_M
        start = self.tok
        expr = self.nexpr()
        if expr in (HALF, NM1, TAIL) or (expr.is_constant() and expr.constant() >= 0
                                        and expr.constant().denominator == 1):
            return expr
        self.error(["(n+1)/2", "n-1", "(n-3)/2", "M", "INT"],
                   f"bound {expr.render()} is not one of the allowed kinds", tok=start)

    # terms
    def term(self, allow_k=True):
        factors = self.factor(allow_k)
        while self.at("*") or self.at("/"):
            inverse = self.tok.kind == "/"
            self.i += 1
            fs = self.factor(allow_k)
            factors += [_invert(f) for f in fs] if inverse else fs
        try:
            return make_term(factors)
        except ValueError as exc:
            self.error([], str(exc))

    def factor(self, allow_k):
        t = self.tok
        if t.kind == "INT" or (t.kind == "-" and self.peek().kind == "INT"):
            return [Const(Fraction(self.integer(signed=True)))]
        if t.kind == "IDENT":
            if t.text == "qint":
                return [self.powered(self.qint(allow_k))]
            if t.text == "poch":
                return [self.powered(self.poch(allow_k))]
            if t.text in NAMED:
                self.i += 1
                return [self.powered(Named(t.text))]
            if t.text == "q" and self.peek().kind == "^" and self.peek(2).kind == "(":
                if not allow_k:
                    self.error([], "q^(...) in k is not allowed in a prefactor")
                self.i += 3
                alpha, beta = self.quad()
                self.take(")")
                return [QQuad(alpha, beta)]
            if t.text in PARAM_NAMES or t.text == "q":
                m = self.symbol()
                if self.at("^") and self.peek().kind in ("IDENT", "("):
                    self.i += 1
                    return [MonoPow(m, self.exponent(allow_k))]
                return [MonoPow(m, NExpr(1))]
            self.error(["qint", "poch", "omega", "theta", "rq", "sq", "a", "b", "c", "d", "q",
                        "(", "INT"], f"unknown symbol {t.text!r}")
        if t.kind == "(":
            self.i += 1
            m = self.mono()
            self.take(")")
            self.take("^")
            return [MonoPow(m, self.exponent(allow_k))]
        self.error(["qint", "poch", "(", "INT", "symbol"])

    def powered(self, f):
        if self.at("^"):
            self.i += 1
            p = self.integer(signed=True)
            if p == 0:
                self.error([], "zero power")
            return type(f)(**{**{s: getattr(f, s) for s in f.__dataclass_fields__}, "power": p})
        return f

    def exponent(self, allow_k):
        if self.at_word("k"):
            if not allow_k:
                self.error([], "exponent k is not allowed in a prefactor")
            self.i += 1
            return K
        if self.at_word("n"):
            self.i += 1
            return NExpr.n()
        if self.at("INT") or self.at("-"):
            return NExpr(self.integer(signed=True))
        self.take("(")
        e = self.nexpr()
        self.take(")")
        return e

    def qint(self, allow_k):
        self.word("qint")
        self.take("(")
        start = self.tok
        poly = self.expr()
        self.take(")")
        kc = {nd: c for (kd, nd), c in poly.items() if kd == 1}
        if any(kd > 1 for kd, _ in poly) or any(nd for nd in kc) or \
                any(c.denominator != 1 for c in kc.values()):
            self.error([], "qint argument must be integer*k plus an expression in n", tok=start)
        k_coeff = int(kc.get(0, 0))
        if k_coeff and not allow_k:
            self.error([], "qint in k is not allowed in a prefactor", tok=start)
        base = _to_nexpr({nd: c for (kd, nd), c in poly.items() if kd == 0})
        return QInt(k_coeff, base)

    def poch(self, allow_k):
        self.word("poch")
        self.take("(")
        base = self.mono()
        self.take(";")
        self.word("q")
        self.take("^")
        step = self.tok
        if self.integer() != 2:
            self.error(["2"], "only step q^2 is supported", tok=step)
        self.take(";")
        if self.at_word("k") and self.peek().kind == ")":
            if not allow_k:
                self.error([], "length k is not allowed in a prefactor")
            self.i += 1
            length = K
        else:
            length = self.nexpr()
        self.take(")")
        return Poch(base, length)

    # monomials
    def mono(self):
        coeff = Fraction(1)
        if self.at("-"):
            self.i += 1
            coeff = -coeff
        parts = []
        if self.at("INT"):
            coeff *= self.rational()
            if not self.at("*"):
                return Monomial(coeff)
            self.i += 1
        parts.append(self.symbol())
        while self.at("*"):
            self.i += 1
            parts.append(self.symbol())
        m = Monomial(coeff)
        for p in parts:
            m = m * p
        return m

    def symbol(self):
        t = self.tok
        if t.kind != "IDENT" or t.text not in PARAM_NAMES + ("q",):
            self.error(PARAM_NAMES + ("q",), f"unknown symbol {t.text!r}" if t.kind == "IDENT" else None)
        self.i += 1
        e = 1
        if self.at("^") and (self.peek().kind == "INT" or
                             (self.peek().kind == "-" and self.peek(2).kind == "INT")):
            self.i += 1
            e = self.integer(signed=True)
        if t.text == "q":
            return Monomial(1, (), e)
        return Monomial(1, ((t.text, e),), 0)

    # polynomial expressions in k and n
    def expr(self):
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        acc = self.prod()
        if neg:
            acc = _pscale(acc, -1)
        while self.at("+") or self.at("-"):
            sign = 1 if self.tok.kind == "+" else -1
            self.i += 1
            acc = _padd(acc, _pscale(self.prod(), sign))
        return acc

    def prod(self):
        acc = self.atom()
        while True:
            if self.at("*"):
                self.i += 1
                acc = _pmul(acc, self.atom())
            elif self.at("/"):
                self.i += 1
                d = int(self.take("INT").text)
                if d == 0:
                    self.error([], "division by zero")
                acc = _pscale(acc, Fraction(1, d))
            else:
                return acc

    def atom(self):
        t = self.tok
        if t.kind == "INT":
            self.i += 1
            base = {(0, 0): Fraction(int(t.text))}
        elif t.kind == "IDENT" and t.text in ("n", "k"):
            self.i += 1
            base = {(1, 0) if t.text == "k" else (0, 1): Fraction(1)}
        elif t.kind == "(":
            self.i += 1
            base = self.expr()
            self.take(")")
        else:
            self.error(["INT", "n", "k", "("])
        if self.at("^"):
            self.i += 1
            e = self.integer()
            out = {(0, 0): Fraction(1)}
            for _ in range(e):
                out = _pmul(out, base)
            base = out
        return base

    def nexpr(self):
        start = self.tok
        poly = self.expr()
        if any(kd for kd, _ in poly):
            self.error([], "k is not allowed here", tok=start)
        return _to_nexpr({nd: c for (_, nd), c in poly.items()})

    def quad(self):
        start = self.tok
        poly = self.expr()
        ok = all(nd == 0 and kd in (1, 2) and c.denominator == 1 for (kd, nd), c in poly.items())
        if not ok:
            self.error([], "q^(...) needs integer alpha*k^2 + beta*k", tok=start)
        return int(poly.get((2, 0), 0)), int(poly.get((1, 0), 0))

    # modulus
    def modexpr(self):
        out = [self.modfactor()]
        while self.at("*"):
            self.i += 1
            out.append(self.modfactor())
        return tuple(out)

    def modfactor(self):
        t = self.tok
        if self.at_word("Phi"):
            self.i += 1
            self.take("(")
            self.word("n")
            self.take(")")
            kind = "PHI"
        elif self.at("["):
            self.i += 1
            self.word("n")
            self.take("]")
            kind = "QINT"
        elif self.at("("):
            self.i += 1
            if self.at("INT", "1"):
                self.i += 1
                self.take("-")
                self.word("a")
                self.take("*")
                kind = "ONE_MINUS_AQN"
            elif self.at_word("a") or self.at_word("b"):
                kind = "A_MINUS_QN" if self.tok.text == "a" else "B_MINUS_QN"
                self.i += 1
                self.take("-")
            else:
                self.error(["1", "a", "b"])
            self.word("q")
            self.take("^")
            self.word("n")
            self.take(")")
        else:
            self.error(["Phi", "[", "("], tok=t)
        e = 1
        if self.at("^"):
            self.i += 1
            e = self.integer()
            if e < 1:
                self.error([], "modulus exponents must be positive")
        return ModFactor(kind, e)


def _padd(x, y):
    out = dict(x)
    for key, c in y.items():
        out[key] = out.get(key, 0) + c
    return {key: c for key, c in out.items() if c}


def _pscale(x, s):
    return {key: c * s for key, c in x.items() if c * s}


def _pmul(x, y):
    out = {}
    for (k1, n1), c1 in x.items():
        for (k2, n2), c2 in y.items():
            key = (k1 + k2, n1 + n2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def _to_nexpr(by_degree):
    top = max(by_degree, default=0)
    return NExpr(*(by_degree.get(d, 0) for d in range(top + 1)))


def _invert(f):
    if isinstance(f, Const):
        return Const(1 / f.value)
    if isinstance(f, MonoPow):
        return MonoPow(f.mono ** -1, f.exponent)
    if isinstance(f, QQuad):
        return QQuad(-f.alpha, -f.beta)
    return type(f)(**{**{s: getattr(f, s) for s in f.__dataclass_fields__}, "power": -f.power})


# Public API.

def parse_task(text):
    """Parse one task; raises ParseError with a position on the first violation."""
    return _Parser(text).task()


def parse_term(text):
    """Parse a single summand (handy for tests and the REPL)."""
    p = _Parser(text)
    t = p.term()
    p.take("EOF")
    return t


def render(task):
    """Canonical text; parse_task(render(t)) == t."""
    lines = ["verify" + (f' "{task.name}"' if task.name != "spec" else "")]
    if task.params is not None:
        lines.append("params: " + ", ".join(task.params))
    conds = []
    if task.n_min != 3:
        conds.append(f"n > {task.n_min - 2}")
    conds += [f"{name} != {value}" for name, value in task.exclude]
    if conds:
        lines.append("where " + ", ".join(conds))
    lines.append("lhs: " + task.lhs.render())
    lines.append("rhs: " + (task.rhs.render() if task.rhs is not None else "0"))
    lines.append("modulus: " + render_modulus(task.modulus))
    return "\n".join(lines) + "\n"


def lower(task):
    """Check the task semantically and turn it into a CongruenceTask."""
    if not task.modulus:
        raise SpecSemanticError("empty modulus")
    mentioned = set()
    named = set()
    for spec in (task.lhs, task.rhs):
        if spec is None:
            continue
        for term in (spec.term, spec.prefactor):
            for f in term:
                if isinstance(f, (Poch, MonoPow)):
                    mentioned |= (f.base if isinstance(f, Poch) else f.mono).names()
                elif isinstance(f, Named):
                    named.add(f.name)
    mentioned |= modulus_params(task.modulus)
    domain = set(task.params) if task.params is not None else set(mentioned)
    undeclared = mentioned - domain
    if undeclared:
        raise SpecSemanticError(f"parameters {', '.join(sorted(undeclared))} are not declared")
    needs = {"theta": {"a", "b"}, "rq": {"a"}, "sq": {"a"}}
    for name in sorted(named):
        missing = needs.get(name, set()) - domain
        if missing:
            raise SpecSemanticError(f"{name} needs parameter(s) {', '.join(sorted(missing))}")
    for name, _ in task.exclude:
        if name not in domain:
            raise SpecSemanticError(f"condition on undeclared parameter {name}")
    extra = tuple(sorted(domain))
    return CongruenceTask(task.name, task.lhs, task.rhs, task.modulus, extra, task.n_min,
                          task.exclude)


def from_catalog(task):
    """The SpecTask describing a catalog CongruenceTask (useful for rendering)."""
    params = tuple(sorted(set(task.params) | task.lhs.params()
                          | (task.rhs.params() if task.rhs else set())
                          | modulus_params(task.modulus)))
    return SpecTask(task.name, params or None, task.n_min, tuple(sorted(task.exclude)),
                    task.lhs, task.rhs, task.modulus)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_task(fh.read())


__all__ = ["ParseError", "SpecSemanticError", "SpecTask", "Token", "tokenize", "parse_task",
           "parse_term", "render", "lower", "from_catalog", "load", "term_params"]
