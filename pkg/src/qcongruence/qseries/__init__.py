"""q-integers, q-shifted factorials, q-binomials and the catalog of sums."""

from __future__ import annotations

from fractions import Fraction

from ..exact.factored import FactoredFrac
from . import catalog
from .catalog import CATALOG, resolve
from .nexpr import NExpr
from .prefactors import omega_ratfn, proof_prefactor, theta_ratfn
from .terms import (BOUND_M, CongruenceTask, InadmissibleError, ModFactor, Monomial, SumSpec,
                    eval_sum, eval_term, make_term, mono, poch_factored, qint_factored)

__all__ = [
    "qint", "qpoch", "qbinom", "catalog_term", "catalog_sum", "catalog_sum_factored",
    "omega", "theta", "proof_prefactor", "CATALOG", "resolve", "catalog",
    "Monomial", "mono", "SumSpec", "CongruenceTask", "ModFactor", "NExpr",
    "InadmissibleError", "make_term",
]


def qint(m):
    """[m] = (1 - q^m)/(1 - q) as a RatFn, for any integer m."""
    return qint_factored(int(m)).to_ratfn()


def qpoch(base, step, k, params=None):
    """(base; q^step)_k, with base a Monomial (or a rational constant)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(base, Monomial):
        c, e = base.specialize(params or {})
    else:
        c, e = Fraction(base), 0
    return poch_factored(c, e, k, step=step).to_ratfn()


def qbinom(t, s):
    """Gaussian binomial coefficient [t choose s] in q."""
    if not 0 <= s <= t:
        raise ValueError(f"need 0 <= s <= t, got t={t}, s={s}")
    f = poch_factored(1, 1, t, 1) / (poch_factored(1, 1, s, 1) * poch_factored(1, 1, t - s, 1))
    return f.to_ratfn()


omega = omega_ratfn
theta = theta_ratfn


def _side(target_id, side):
    tid = resolve(target_id)
    if tid not in CATALOG:
        raise KeyError(f"{tid} is not a sum congruence")
    task = CATALOG[tid]
    side = side.upper()
    if side == "LHS":
        return task, task.lhs
    if side == "RHS":
        if task.rhs is None:
            raise ValueError(f"{tid} has a zero right-hand side")
        return task, task.rhs
    raise ValueError(f"side must be LHS or RHS, got {side!r}")


def catalog_term(target_id, side, k, n, params=None):
    """The k-th summand of one side, prefactor excluded, as a reduced RatFn."""
    task, spec = _side(target_id, side)
    task.check_n(n)
    top = spec.resolve_upper(n, "nm1" if spec.upper == BOUND_M else "half")
    if spec.upper == BOUND_M:
        top = max(top, spec.resolve_upper(n, "half"))
    if not 0 <= k <= top:
        raise ValueError(f"k = {k} outside 0..{top}")
    return eval_term(spec.term, k, n, params or {}).to_ratfn()


def catalog_sum_factored(target_id, side, n, m_mode="half", params=None):
    task, spec = _side(target_id, side)
    task.check_n(n)
    return eval_sum(spec, n, params or {}, m_mode)


def catalog_sum(target_id, side, n, m_mode="half", params=None):
    """A whole side (sum times prefactor) as a reduced RatFn."""
    return catalog_sum_factored(target_id, side, n, m_mode, params).to_ratfn()
