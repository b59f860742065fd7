"""Every congruence target, written as data.

Target ids are stable public names.  The CLI and DSL accept the lower-case
aliases in ``ALIASES`` as well.
"""

from __future__ import annotations

from fractions import Fraction

from .nexpr import HALF, N, TAIL, NExpr
from .terms import (BOUND_M, K, CongruenceTask, ModFactor, MonoPow, Named, Poch, QInt, QQuad,
                    SumSpec, make_term, mono)

ONE_N = NExpr(0)


def P(base, power=1, length=K):
    return Poch(base, length, power)


def Z(m, exponent=K):
    return MonoPow(m, exponent)


SIGN = MonoPow(mono(-1), K)
Q4K1 = QInt(4, NExpr(-1))        # [4k-1]
QN = QInt(0, N)                 # [n]


def qi(m, power=1):
    return QInt(0, NExpr(m), power)


def phi(e=1):
    return ModFactor("PHI", e)


def qn(e=1):
    return ModFactor("QINT", e)


AQN = ModFactor("ONE_MINUS_AQN")
A_QN = ModFactor("A_MINUS_QN")
B_QN = ModFactor("B_MINUS_QN")

# Pochhammer bases.
AQM1 = mono(1, -1, a=1)             # a q^-1
QM1_A = mono(1, -1, a=-1)           # q^-1 / a
QM1_B = mono(1, -1, b=-1)           # q^-1 / b
CQM1 = mono(1, -1, c=1)
DQM1 = mono(1, -1, d=1)
QM1 = mono(1, -1)
Q2_A = mono(1, 2, a=-1)
AQ2 = mono(1, 2, a=1)
BQ2 = mono(1, 2, b=1)
Q2_C = mono(1, 2, c=-1)
Q2_D = mono(1, 2, d=-1)
Q2 = mono(1, 2)
Q3_CD = mono(1, 3, c=-1, d=-1)
QM2_B = mono(1, -2, b=-1)
Q3 = mono(1, 3)
Q6 = mono(1, 6)

# The four-parameter summand shared by THM11, THM31 and WEI-E.
WEI_TERM = make_term([
    Q4K1, P(AQM1), P(QM1_A), P(QM1_B), P(CQM1), P(DQM1), P(QM1),
    P(Q2_A, -1), P(AQ2, -1), P(BQ2, -1), P(Q2_C, -1), P(Q2_D, -1), P(Q2, -1),
    Z(mono(1, 7, b=1, c=-1, d=-1)),
])

FOUR_PHI_THREE = make_term([
    P(AQM1), P(QM1_A), P(QM1_B), P(Q3_CD),
    P(Q2, -1), P(QM2_B, -1), P(Q2_C, -1), P(Q2_D, -1), Z(mono(1, 2)),
])

B_RATIO = make_term([                      # (bq)^h (q^-2/b; q^2)_h / (bq^2; q^2)_h
    Z(mono(1, 1, b=1), HALF), P(QM2_B, 1, HALF), P(BQ2, -1, HALF),
])

# Sum of THM12 and the corollaries' right-hand sides, with its (n-3)/2 bound.
THM12_TERM = make_term([
    Q4K1, P(QM1, 4), P(CQM1), P(DQM1), P(Q2, -4), P(Q2_C, -1), P(Q2_D, -1),
    Z(mono(1, 7, c=-1, d=-1)),
])


def _cor_rhs(extra_top, bottoms, qints):
    term = make_term([P(Q3, 3)] + ([P(extra_top)] if extra_top else [])
                     + [P(b, -p) for b, p in bottoms] + [Z(mono(1, 2))])
    pre = make_term([Named("omega")] + [qi(m, p) for m, p in qints])
    return SumSpec(TAIL, term, pre)


# The (b -> 1) summand of WEI-F / WEI-H and its tail sum.
AC_TERM = make_term([
    Q4K1, P(AQM1), P(QM1_A), P(CQM1), P(DQM1), P(QM1, 2),
    P(Q2_A, -1), P(AQ2, -1), P(Q2_C, -1), P(Q2_D, -1), P(Q2, -2),
    Z(mono(1, 7, c=-1, d=-1)),
])
AC_TAIL = make_term([
    P(Q3), P(mono(1, 3, a=1)), P(mono(1, 3, a=-1)), P(mono(1, 7, c=-1, d=-1)),
    P(Q2, -1), P(Q6, -1), P(mono(1, 6, c=-1), -1), P(mono(1, 6, d=-1), -1), Z(mono(1, 2)),
])


def _wei_fh_prefactor(named, extra_q=None):
    parts = [QN, Named(named), P(AQM1, 1, NExpr(2)), P(QM1_A, 1, NExpr(2)), P(Q3_CD, 1, NExpr(2)),
             qi(4, -1), qi(2, -1), P(Q2_C, -1, NExpr(2)), P(Q2_D, -1, NExpr(2))]
    if extra_q is not None:
        parts.append(Z(mono(1, 1), extra_q))
    return make_term(parts)


def _build():
    t = {}

    t["THM11"] = CongruenceTask(
        "THM11",
        lhs=SumSpec(BOUND_M, WEI_TERM),
        rhs=SumSpec(HALF, FOUR_PHI_THREE, make_term([QN, *B_RATIO])),
        modulus=(phi(), AQN, A_QN),
        params=("a", "b", "c", "d"),
    )

    t["THM12"] = CongruenceTask(
        "THM12",
        lhs=SumSpec(BOUND_M, THM12_TERM),
        rhs=SumSpec(TAIL, make_term([
            P(Q3, 3), P(mono(1, 7, c=-1, d=-1)),
            P(Q2, -1), P(Q6, -1), P(mono(1, 6, c=-1), -1), P(mono(1, 6, d=-1), -1), Z(mono(1, 2)),
        ]), make_term([
            Named("omega"), P(mono(1, 1), 2, NExpr(1)), qi(2, -2),
            P(Q3_CD, 1, NExpr(2)), P(Q2_C, -1, NExpr(2)), P(Q2_D, -1, NExpr(2)),
        ])),
        modulus=(qn(), phi(3)),
        params=("c", "d"),
    )

    t["THM31"] = CongruenceTask(
        "THM31",
        lhs=SumSpec(BOUND_M, WEI_TERM),
        rhs=SumSpec(HALF, FOUR_PHI_THREE, make_term([QN, Named("theta")])),
        modulus=(phi(), AQN, A_QN, B_QN),
        params=("a", "b", "c", "d"),
    )

    t["EQ12"] = CongruenceTask(
        "EQ12",
        lhs=SumSpec(BOUND_M, make_term([SIGN, Q4K1, P(QM1, 5), P(Q2, -5), QQuad(1, 5)])),
        rhs=SumSpec(HALF, make_term([P(QM1, 2), P(Q3), P(Q2, -3), Z(mono(1, 3))]),
                    make_term([QN, Z(mono(-1, 1), (N + 1) * (N - 3) / 4)])),
        modulus=(qn(), phi(2)),
    )

    eq13_term = make_term([Q4K1, P(QM1, 4), P(Q2, -4), Z(mono(1, 4))])
    t["EQ13"] = CongruenceTask("EQ13", lhs=SumSpec(BOUND_M, eq13_term), rhs=None,
                               modulus=(qn(), phi(2)))

    eq14_term = make_term([Q4K1, P(AQM1), P(QM1_A), P(QM1, 2), P(Q2_A, -1), P(AQ2, -1),
                           P(Q2, -2), Z(mono(1, 4))])
    t["EQ14"] = CongruenceTask("EQ14", lhs=SumSpec(BOUND_M, eq14_term), rhs=None,
                               modulus=(qn(), phi(), AQN, A_QN), params=("a",))
    t["EQ14-STRONG"] = CongruenceTask("EQ14-STRONG", lhs=SumSpec(BOUND_M, eq14_term), rhs=None,
                                      modulus=(qn(2), AQN, A_QN), params=("a",))

    cdq3_term = make_term([Q4K1, P(AQM1), P(QM1_A), P(QM1_B), P(QM1),
                           P(Q2_A, -1), P(AQ2, -1), P(BQ2, -1), P(Q2, -1), Z(mono(1, 4, b=1))])
    t["GEN-CDQ3"] = CongruenceTask(
        "GEN-CDQ3",
        lhs=SumSpec(BOUND_M, cdq3_term),
        rhs=SumSpec(NExpr(0), (), make_term([QN, *B_RATIO])),
        modulus=(qn(), AQN, A_QN),
        params=("a", "b"),
    )
    t["GEN-CDQ3-AB"] = CongruenceTask(
        "GEN-CDQ3-AB",
        lhs=SumSpec(BOUND_M, cdq3_term),
        rhs=SumSpec(NExpr(0), (), make_term([QN, Named("theta")])),
        modulus=(qn(), AQN, A_QN, B_QN),
        params=("a", "b"),
    )

    Q4 = mono(1, 4)
    Q8 = mono(1, 8)
    QM3 = mono(1, -3)
    cor_mod = (qn(), phi(3))
    t["COR13"] = CongruenceTask(
        "COR13",
        lhs=SumSpec(BOUND_M, make_term([SIGN, Q4K1, P(QM1, 5), P(Q2, -5), QQuad(1, 5)])),
        rhs=_cor_rhs(None, [(Q2, 1), (Q6, 2)], [(2, -3), (4, -1)]),
        modulus=cor_mod,
    )
    t["COR14"] = CongruenceTask(
        "COR14",
        lhs=SumSpec(BOUND_M, make_term([SIGN, Q4K1, P(QM1, 4), P(QM3), P(Q2, -4), P(Q4, -1),
                                        QQuad(1, 7)])),
        rhs=_cor_rhs(None, [(Q2, 1), (Q6, 1), (Q8, 1)], [(2, -2), (4, -1), (6, -1)]),
        modulus=cor_mod, n_min=5,
    )
    t["COR15"] = CongruenceTask(
        "COR15",
        lhs=SumSpec(BOUND_M, make_term([Q4K1, P(QM1, 6), P(Q2, -6), Z(mono(1, 7))])),
        rhs=_cor_rhs(mono(1, 7), [(Q2, 1), (Q6, 3)], [(3, 1), (5, 1), (2, -4), (4, -2)]),
        modulus=cor_mod,
    )
    t["COR16"] = CongruenceTask(
        "COR16",
        lhs=SumSpec(BOUND_M, make_term([Q4K1, P(QM1, 5), P(QM3), P(Q2, -5), P(Q4, -1),
                                        Z(mono(1, 9))])),
        rhs=_cor_rhs(mono(1, 9), [(Q2, 1), (Q6, 2), (Q8, 1)],
                     [(5, 1), (7, 1), (2, -3), (4, -2), (6, -1)]),
        modulus=cor_mod, n_min=5,
    )
    t["COR17"] = CongruenceTask(
        "COR17",
        lhs=SumSpec(BOUND_M, make_term([Q4K1, P(QM1, 4), P(QM3, 2), P(Q2, -4), P(Q4, -2),
                                        Z(mono(1, 11))])),
        rhs=_cor_rhs(mono(1, 11), [(Q2, 1), (Q6, 1), (Q8, 2)],
                     [(7, 1), (9, 1), (2, -2), (4, -2), (6, -2)]),
        modulus=cor_mod, n_min=5,
    )

    # Proof steps that are themselves sum congruences.
    t["WEI-E"] = CongruenceTask(
        "WEI-E",
        lhs=SumSpec(BOUND_M, WEI_TERM),
        rhs=SumSpec(HALF, FOUR_PHI_THREE, make_term([
            QN, P(mono(1, 0, b=1), 1, NExpr(2)), P(QM1, 2, HALF), P(QM1, -1, NExpr(2)),
            P(Q2_A, -1, HALF), P(AQ2, -1, HALF),
        ])),
        modulus=(B_QN,),
        params=("a", "b", "c", "d"),
    )
    t["WEI-F"] = CongruenceTask(
        "WEI-F",
        lhs=SumSpec(BOUND_M, AC_TERM),
        rhs=SumSpec(TAIL, AC_TAIL, _wei_fh_prefactor("rq")),
        modulus=(phi(2), AQN, A_QN),
        params=("a", "c", "d"),
        exclude=(("a", 1),),
    )
    t["WEI-H"] = CongruenceTask(
        "WEI-H",
        lhs=SumSpec(BOUND_M, AC_TERM),
        rhs=SumSpec(TAIL, AC_TAIL, _wei_fh_prefactor("sq", (N + 9) / 2)),
        modulus=(phi(2), AQN, A_QN),
        params=("a", "c", "d"),
        exclude=(("a", 1),),
    )
    return t


CATALOG = _build()

# Checks that are not sum congruences; handled by congruence.proof_step_check.
PROOF_STEPS = ("WEI-E", "WEI-F", "WEI-G", "WEI-H", "GS54", "GUO-L1", "GUO-L2")
SPECIAL_STEPS = ("WEI-G", "GS54", "GUO-L1", "GUO-L2")
SPECIAL_PARAMS = {"WEI-G": ("a",), "GS54": ("x",), "GUO-L1": ("a",), "GUO-L2": ("a",)}

THEOREM_TARGETS = ("THM11", "THM12", "THM31", "EQ12", "EQ13", "EQ14", "EQ14-STRONG",
                   "GEN-CDQ3", "GEN-CDQ3-AB", "COR13", "COR14", "COR15", "COR16", "COR17")
PADIC_TARGETS = ("PAD13", "PAD14", "PAD15", "PAD16", "PAD17")

ALL_IDS = THEOREM_TARGETS + ("WEI-E", "WEI-F", "WEI-H") + SPECIAL_STEPS + PADIC_TARGETS

ALIASES = {
    "thm-a": "THM11", "thm-b": "THM12", "thm-c": "THM31",
    "eq12": "EQ12", "eq13": "EQ13", "eq14": "EQ14", "eq14-strong": "EQ14-STRONG",
    "gen-cdq3": "GEN-CDQ3", "gen-cdq3-ab": "GEN-CDQ3-AB",
    "cor13": "COR13", "cor14": "COR14", "cor15": "COR15", "cor16": "COR16", "cor17": "COR17",
    "wei-e": "WEI-E", "wei-f": "WEI-F", "wei-g": "WEI-G", "wei-h": "WEI-H",
    "gs54": "GS54", "guo-l1": "GUO-L1", "guo-l2": "GUO-L2",
    "pad13": "PAD13", "pad14": "PAD14", "pad15": "PAD15", "pad16": "PAD16", "pad17": "PAD17",
}

DESCRIPTIONS = {
    "THM11": "four-parameter sum mod Phi_n(q)(1-aq^n)(a-q^n)",
    "THM12": "two-parameter sum mod [n]Phi_n(q)^3 with Omega_q(n)",
    "THM31": "four-parameter sum mod Phi_n(q)(1-aq^n)(a-q^n)(b-q^n) with Theta_q(a,b,n)",
    "EQ12": "alternating quintic sum mod [n]Phi_n(q)^2",
    "EQ13": "quartic sum vanishing mod [n]Phi_n(q)^2",
    "EQ14": "one-parameter sum vanishing mod [n]Phi_n(q)(1-aq^n)(a-q^n)",
    "EQ14-STRONG": "one-parameter sum vanishing mod [n]^2(1-aq^n)(a-q^n)",
    "GEN-CDQ3": "cd = q^3 specialisation mod [n](1-aq^n)(a-q^n)",
    "GEN-CDQ3-AB": "cd = q^3 specialisation mod [n](1-aq^n)(a-q^n)(b-q^n)",
    "COR13": "c -> 1, d -> oo corollary mod [n]Phi_n(q)^3",
    "COR14": "c -> q^-2, d -> oo corollary mod [n]Phi_n(q)^3 (n > 3)",
    "COR15": "c -> 1, d -> 1 corollary mod [n]Phi_n(q)^3",
    "COR16": "c -> 1, d -> q^-2 corollary mod [n]Phi_n(q)^3 (n > 3)",
    "COR17": "c -> q^-2, d -> q^-2 corollary mod [n]Phi_n(q)^3 (n > 3)",
    "WEI-E": "Watson-derived step mod (b-q^n)",
    "WEI-F": "b -> 1 step with R_q(a,n) mod Phi_n(q)^2(1-aq^n)(a-q^n)",
    "WEI-G": "R_q bracket reduction mod Phi_n(q)",
    "WEI-H": "step with S_q(a,n) mod Phi_n(q)^2(1-aq^n)(a-q^n)",
    "GS54": "Pochhammer reflection mod Phi_n(q), every k",
    "GUO-L1": "(aq^2, q^2/a; q^2)_((n-1)/2) mod Phi_n(q)",
    "GUO-L2": "(aq, q/a; q^2)_((n-1)/2) mod Phi_n(q)",
    "PAD13": "classical q -> 1 of COR13 mod p^(r+3)",
    "PAD14": "classical q -> 1 of COR14 mod p^(r+3)",
    "PAD15": "classical q -> 1 of COR15 mod p^(r+3)",
    "PAD16": "classical q -> 1 of COR16 mod p^(r+3)",
    "PAD17": "classical q -> 1 of COR17 mod p^(r+3)",
}


def resolve(name):
    """Map a CLI/DSL alias or canonical id to the canonical id; KeyError if unknown."""
    if name in ALL_IDS:
        return name
    key = name.lower()
    if key in ALIASES:
        return ALIASES[key]
    raise KeyError(f"unknown target {name!r}")


def get(target_id):
    return CATALOG[resolve(target_id)]


def Fr(x):
    return Fraction(x)
