"""Acceptance criteria; each test prints one PASS/FAIL line and asserts it."""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from qcongruence import cli, padic
from qcongruence.congruence import (PASS, SKIPPED, central_term_check, lemma_a_symmetry_check,
                                    lemma_b_check, lhopital_limit_check, proof_step_check,
                                    recheck, verify_task, watson_identity_check)
from qcongruence.exact import (ONE, LaurentPoly, crt_pair, cyclotomic, divisors, poly_ext_gcd,
                               poly_gcd, poly_rem, qint_poly)
from qcongruence.qseries import CATALOG, InadmissibleError, mono, omega, qbinom, qpoch
from qcongruence.qspec import ParseError, load, lower, parse_task, render, tokenize

SEED = 2024
BOTH = ("half", "nm1")
CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.qhs"))


@pytest.fixture
def say(capsys):
    def emit(num, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return emit


def sweep(tid, ns, modes=BOTH, count=3):
    """Run a catalog target over n, mMode and seeded samples; return (checks, failures)."""
    task = CATALOG[tid]
    samples = cli.samples_for(task.all_params(), SEED, tid, count, task.exclude)
    checks, bad = 0, []
    for n in ns:
        for mode in modes:
            for s in samples:
                v, delta, mod = verify_task(task, n, mode, s, return_delta=True)
                checks += 1
                if not (v.status == PASS and recheck(delta, mod, v)):
                    bad.append((tid, n, mode, v.status, v.diagnostics))
    return checks, bad


def summary(checks, bad, extra=""):
    head = f"{checks - len(bad)}/{checks} checks pass"
    if bad:
        head += "; failing: " + ", ".join(f"{t} n={n} M={m}" for t, n, m, *_ in bad)
    return head + extra


def test_criterion_01_watson(say):
    rng = random.Random(SEED)
    pool = list(cli.POOL)
    t0 = time.perf_counter()
    checks, bad = 0, []
    for n_trunc in range(7):
        done = 0
        while done < 5:
            params = rng.sample(pool, 5)
            try:
                v = watson_identity_check(n_trunc, *params)
            except InadmissibleError:
                continue
            done += 1
            checks += 1
            if v.status != PASS:
                bad.append((n_trunc, params))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    say(1, ok, f"{checks - len(bad)}/{checks} exact identities, {dt:.2f} s (limit 5 s)")
    assert ok


def test_criterion_02_thm11(say):
    t0 = time.perf_counter()
    checks, bad = sweep("THM11", (3, 5, 7, 9, 11, 13))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    say(2, ok, summary(checks, bad, f", {dt:.1f} s (limit 60 s)"))
    assert ok


def test_criterion_03_thm12(say):
    ns = (3, 5, 7, 9, 11, 13)
    checks, bad = sweep("THM12", ns)
    coprime = all(poly_gcd(omega(n).den, cyclotomic(n)) == ONE for n in ns)
    ok = not bad and coprime
    say(3, ok, summary(checks, bad, f"; Omega denominator coprime to Phi_n: {coprime}"))
    assert ok


def test_criterion_04_thm31(say):
    checks, bad = sweep("THM31", (3, 5, 7, 9))
    say(4, not bad, summary(checks, bad))
    assert not bad


def test_criterion_05_known(say):
    checks, bad = 0, []
    for tid in ("EQ12", "EQ13", "EQ14", "EQ14-STRONG"):
        c, b = sweep(tid, (3, 5, 7, 9))
        checks, bad = checks + c, bad + b
    say(5, not bad, summary(checks, bad))
    assert not bad


def test_criterion_06_generalisations(say):
    checks, bad = 0, []
    for tid in ("GEN-CDQ3", "GEN-CDQ3-AB"):
        c, b = sweep(tid, (3, 5, 7, 9))
        checks, bad = checks + c, bad + b
    say(6, not bad, summary(checks, bad))
    assert not bad


def test_criterion_07_corollaries(say):
    checks, bad = 0, []
    for tid in ("COR13", "COR15"):
        c, b = sweep(tid, (3, 5, 7, 9, 11))
        checks, bad = checks + c, bad + b
    for tid in ("COR14", "COR16", "COR17"):
        c, b = sweep(tid, (5, 7, 9, 11))
        checks, bad = checks + c, bad + b
    say(7, not bad, summary(checks, bad))
    assert not bad


def test_criterion_08_lemmas(say):
    names = ("a", "b", "c", "d")
    samples = cli.samples_for(names, SEED, "LEMMA", 3)
    checks, bad = 0, []
    for s in samples:
        for n in (3, 5, 7, 9, 11):
            checks += 1
            if lemma_a_symmetry_check(n, s).status != PASS:
                bad.append(("symmetry", n, s))
        for n in (3, 7, 11):
            checks += 1
            if central_term_check(n, s).status != PASS:
                bad.append(("central", n, s))
        for n in (9, 15):
            for mode in BOTH:
                checks += 1
                if lemma_b_check(n, mode, s).status != PASS:
                    bad.append(("[n] divides LHS", n, mode))
    say(8, not bad, f"{checks - len(bad)}/{checks} checks pass" + (f"; failing {bad}" if bad else ""))
    assert not bad


def test_criterion_09_proof_steps(say):
    checks, bad = 0, []
    for step in ("WEI-E", "WEI-F", "WEI-H", "GS54", "GUO-L1", "GUO-L2"):
        names, exclude = cli._params_of(step, CATALOG.get(step))
        for s in cli.samples_for(names, SEED, step, 3, exclude):
            for n in (3, 5, 7):
                checks += 1
                if proof_step_check(step, n, s).status != PASS:
                    bad.append((step, n, s))
    values = {}
    for n in (3, 5, 7):
        for qv in (2, 3, Fraction(5, 2)):
            v = lhopital_limit_check(n, qv)
            checks += 1
            values[(n, qv)] = v.value
            if v.status != PASS:
                bad.append(("LHOPITAL", n, qv))
    exact = values[(3, 2)] == Fraction(-245, 3)
    ok = not bad and exact
    say(9, ok, f"{checks - len(bad)}/{checks} checks pass; limit at n=3, q=2 is {values[(3, 2)]}")
    assert ok


def test_criterion_10_classical(say):
    t0 = time.perf_counter()
    runs = [(t, p, 1) for t in padic.TARGETS for p in (5, 7, 11)] + [("PAD13", 5, 2)]
    bad = []
    for tid, p, r in runs:
        v = padic.classical_check(tid, p, r)
        if v.status != PASS or padic.vp(v.value, p) < r + 3:
            bad.append((tid, p, r))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    say(10, ok, f"{len(runs) - len(bad)}/{len(runs)} valuations >= r+3, {dt:.2f} s (limit 10 s)"
        + (f"; failing {bad}" if bad else ""))
    assert ok


def _rand_poly(rng):
    return LaurentPoly([rng.randint(-9, 9) for _ in range(rng.randint(1, 9))])


def test_criterion_11_algebra(say):
    parts = {}
    ok = True
    for n in range(1, 51):
        prod, qint = ONE, ONE
        for d in divisors(n):
            prod = prod * cyclotomic(d)
            if d > 1:
                qint = qint * cyclotomic(d)
        ok &= prod == LaurentPoly.from_dict({0: -1, n: 1}) and qint == qint_poly(n)
    parts["cyclotomic"] = ok
    ok = True
    for t in range(31):
        lhs = qpoch(mono(1, 1), 2, t) / qpoch(mono(1, 2), 2, t) * qpoch(mono(-1, 1), 1, t) ** 2
        rhs = qbinom(2 * t, t)
        ok &= lhs == rhs and rhs.den == ONE and all(
            c.denominator == 1 and c >= 0 for c in rhs.num.coeffs)
    parts["central q-binomial"] = ok
    rng = random.Random(SEED)
    ok = True
    for _ in range(50):
        c = Fraction(rng.choice([1, 2, 3, -2, 5]), rng.choice([1, 2, 3]))
        e, step = rng.randint(-4, 4), rng.choice([1, 2])
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        ok &= qpoch(mono(c, e), step, m + k) == (qpoch(mono(c, e), step, m)
                                                 * qpoch(mono(c, e + step * m), step, k))
    parts["Pochhammer"] = ok
    ok, done = True, 0
    while done < 100:
        a, b = _rand_poly(rng), _rand_poly(rng)
        if a.is_zero() and b.is_zero():
            continue
        done += 1
        g, u, v = poly_ext_gcd(a, b)
        ok &= (u * a + v * b - g).is_zero() and g.lc() == 1
    parts["ext-gcd"] = ok
    ok, done = True, 0
    while done < 100:
        p, q = _rand_poly(rng), _rand_poly(rng)
        if p.degree() < 1 or q.degree() < 1 or poly_gcd(p, q).degree() > 0:
            continue
        done += 1
        rp, rq = poly_rem(_rand_poly(rng), p), poly_rem(_rand_poly(rng), q)
        r = crt_pair(p, rp, q, rq)
        ok &= poly_rem(r - rp, p).is_zero() and poly_rem(r - rq, q).is_zero()
    parts["CRT"] = ok
    good = all(parts.values())
    say(11, good, ", ".join(f"{k} {'ok' if v else 'BAD'}" for k, v in parts.items()))
    assert good


def test_criterion_12_parser(say):
    trips = sum(parse_task(render(load(p))) == load(p) for p in CORPUS)
    same = True
    for stem, tid in (("thm11", "THM11"), ("thm12", "THM12"), ("eq13", "EQ13")):
        task = lower(load(Path(__file__).parent / "corpus" / f"{stem}.qhs"))
        built = CATALOG[tid]
        for s in cli.samples_for(built.all_params(), SEED, tid, 2):
            for mode in BOTH:
                a, b = verify_task(task, 3, mode, s), verify_task(built, 3, mode, s)
                same &= (a.status, a.digest()) == (b.status, b.digest())
    typos = located = 0
    for path in CORPUS:
        text = path.read_text(encoding="utf-8")
        toks = [t for t in tokenize(text) if t.kind not in ("EOF", "STRING")]
        for tok in random.Random(path.stem).sample(toks, min(5, len(toks))):
            typos += 1
            try:
                parse_task(text[:tok.offset] + "@" + text[tok.offset + 1:])
            except ParseError as exc:
                located += exc.offset <= tok.offset
    ok = trips == len(CORPUS) >= 20 and same and located == typos
    say(12, ok, f"round trip {trips}/{len(CORPUS)}, transcriptions identical: {same}, "
        f"typos located {located}/{typos}")
    assert ok


def test_criterion_13_determinism(say, tmp_path):
    args = ["verify", "--target", "thm-a,thm-c,eq14,cor13", "--n", "3,5", "--samples", "2",
            "--seed", str(SEED)]
    outs = []
    for threads in (1, 3):
        out = tmp_path / f"t{threads}.json"
        cli.run(args + ["--threads", str(threads), "--out", str(out)])
        outs.append(out.read_bytes())
    ok = outs[0] == outs[1] and json.loads(outs[0])["entries"]
    say(13, bool(ok), f"reports with 1 and 3 workers byte-identical: {outs[0] == outs[1]} "
        f"({len(outs[0])} bytes)")
    assert ok
