import random
from pathlib import Path

import pytest

from conftest import SAMPLES4
from qcongruence.congruence import Modulus, verify_task
from qcongruence.exact import cyclotomic
from qcongruence.qseries import CATALOG
from qcongruence.qseries.terms import render_term
from qcongruence.qspec import (ParseError, SpecSemanticError, from_catalog, load, lower,
                               parse_task, parse_term, render, tokenize)

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.qhs"))


def test_corpus_size():
    assert len(CORPUS) >= 20


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_round_trip(path):
    task = load(path)
    text = render(task)
    again = parse_task(text)
    assert again == task
    assert render(again) == text


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_injected_typo_is_located(path):
    text = path.read_text(encoding="utf-8")
    toks = [t for t in tokenize(text) if t.kind not in ("EOF", "STRING")]
    rng = random.Random(path.stem)
    for tok in rng.sample(toks, min(12, len(toks))):
        broken = text[:tok.offset] + "@" + text[tok.offset + 1:]
        with pytest.raises(ParseError) as err:
            parse_task(broken)
        assert err.value.offset <= tok.offset


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_corrupted_keyword_is_located(path):
    text = path.read_text(encoding="utf-8")
    for word, bad in (("poch", "pohc"), ("modulus", "modulos"), ("qint", "qnit")):
        at = text.find(word)
        if at < 0 or text.rfind("#", 0, at) > text.rfind("\n", 0, at):
            continue
        broken = text[:at] + bad + text[at + len(word):]
        with pytest.raises(ParseError) as err:
            parse_task(broken)
        assert err.value.offset <= at


def test_parse_error_fields():
    text = "verify\nlhs: sum k=0..M: qint(4*k-1) ~\n"
    with pytest.raises(ParseError) as err:
        parse_task(text)
    e = err.value
    assert e.offset == text.index("~")
    assert (e.line, e.column) == (2, text.index("~") - text.index("\n"))
    with pytest.raises(ParseError) as err:
        parse_task("verify lhs: sum k=0..n+1: 1 rhs: 0 modulus: [n]")
    assert err.value.offset == len("verify lhs: sum k=0..")
    with pytest.raises(ParseError):
        parse_term("poch(a*q^-1; q^3; k)")


def test_term_examples():
    assert render_term(parse_term("qint(4*k-1)")) == "qint(4*k-1)"
    assert render_term(parse_term("poch(a*q^-1; q^2; k)")) == "poch(a*q^-1; q^2; k)"
    assert render_term(()) == "1"
    (f,) = parse_term("qint(4*k-1)")
    assert (f.k_coeff, str(f.base.render())) == (4, "-1")


@pytest.mark.parametrize("stem, tid", [("thm11", "THM11"), ("thm12", "THM12"), ("eq13", "EQ13")])
def test_transcriptions_match_catalog(stem, tid):
    task = lower(load(Path(__file__).parent / "corpus" / f"{stem}.qhs"))
    built = CATALOG[tid]
    assert task.lhs == built.lhs
    assert task.rhs == built.rhs
    s = {k: v for k, v in SAMPLES4[0].items() if k in built.all_params()}
    for n in (3, 5):
        for mode in ("half", "nm1"):
            a = verify_task(task, n, mode, s)
            b = verify_task(built, n, mode, s)
            assert (a.status, a.digest()) == (b.status, b.digest())


@pytest.mark.parametrize("tid", sorted(CATALOG))
def test_catalog_renders_and_reparses(tid):
    spec = from_catalog(CATALOG[tid])
    again = parse_task(render(spec))
    assert again == spec
    assert lower(again).lhs == CATALOG[tid].lhs


def test_modexpr_lowering():
    task = lower(parse_task("verify lhs: sum k=0..M: qint(4*k-1) rhs: 0 modulus: Phi(n)^3 * [n]"))
    assert Modulus(task.modulus, 3).poly == cyclotomic(3) ** 4


def test_semantic_errors():
    base = "verify {p} lhs: sum k=0..M: {t} rhs: 0 modulus: {m}"
    with pytest.raises(SpecSemanticError):
        lower(parse_task(base.format(p="params: a", t="theta", m="Phi(n)")))
    with pytest.raises(SpecSemanticError):
        lower(parse_task(base.format(p="params: a", t="poch(b*q; q^2; k)", m="Phi(n)")))
    with pytest.raises(SpecSemanticError):
        lower(parse_task(base.format(p="params: b", t="rq", m="Phi(n)")))
    with pytest.raises(SpecSemanticError):
        lower(parse_task(base.format(p="", t="1", m="(1-a*q^n)").replace("verify ", "verify params: b ")))
    ok = lower(parse_task(base.format(p="params: a, b", t="theta", m="Phi(n)")))
    assert set(ok.all_params()) == {"a", "b"}


def test_where_clause():
    t = parse_task("verify where n > 3, a != 1 lhs: sum k=0..M: poch(a*q; q^2; k) "
                   "rhs: 0 modulus: Phi(n)")
    assert t.n_min == 5 and t.exclude == (("a", 1),)
    t = parse_task("verify where n > 4 lhs: sum k=0..M: 1 rhs: 0 modulus: Phi(n)")
    assert t.n_min == 5
    assert "n > 3" in render(t)
