"""Surface syntax: reader positions, sugar, round-trips, fixtures."""

import pathlib
import random

import pytest

from lkt.families import FAMILIES, random_proof
from lkt.formulas import conj, eq, num, top
from lkt.proofs import (
    AllL,
    AllR,
    AndL,
    AndR,
    Ax,
    Cut,
    Eql,
    Ind,
    NegL,
    NegR,
    Rfl,
    TopR,
    ax,
    iter_nodes,
    proof_eq,
)
from lkt.serialize import (
    ParseError,
    SerializeError,
    parse_document,
    parse_expr,
    parse_ty,
    print_document,
    print_expr,
    print_ty,
    read_sexpr,
)
from lkt.terms import app, arrow, const, nat, o
from lkt.typecheck import check

DATA = pathlib.Path(__file__).parent / "data"


def pe(text, sig=None, types=None):
    return parse_expr(read_sexpr(text), {}, sig or {}, types or set())


# ---------------------------------------------------------------- expressions


def test_numerals_both_ways():
    assert pe("3") is num(3)
    assert pe("(s (s 0))") is num(2)
    assert print_expr(num(3)) == "3"
    assert print_expr(pe("(= 2 (s (s 0)))")) == "(= 2 2)"


def test_binder_sugar():
    assert pe("(all x (= x x))") is pe("(all (x nat) (= x x))")
    e = pe("(ex (y o) (imp y y))")
    assert print_expr(e) == "(ex (y o) (imp y y))"
    f = pe("(lam (g (-> nat nat)) (g 0))")
    assert print_ty(f.ty) == "(-> (-> nat nat) nat)"


def test_arrow_flattening():
    t = parse_ty(read_sexpr("(-> nat (-> nat o))"), set())
    assert t is parse_ty(read_sexpr("(-> nat nat o)"), set())
    assert print_ty(t) == "(-> nat nat o)"


def test_comments_and_whitespace():
    e = pe("(and top ; trailing words\n  top)")
    assert e is conj(top, top)


def test_expr_print_parse_identity():
    cases = [
        "(all x (imp (= x 0) (= 0 x)))",
        "(not (or top bot))",
        "(ex (p o) (and p (not p)))",
    ]
    for c in cases:
        e = pe(c)
        assert pe(print_expr(e)) is e


# ---------------------------------------------------------------- documents


def test_fixture_documents():
    seen = set()
    for path in sorted(DATA.glob("doc*.lkt")):
        doc = parse_document(path.read_text())
        check(doc.proof, doc.ctx)
        out = print_document(doc.proof, doc.ctx)
        again = parse_document(out)
        assert proof_eq(doc.proof, again.proof)
        assert doc.ctx == again.ctx
        seen |= {type(nd) for nd in iter_nodes(doc.proof)}
    # the fixtures jointly exercise the whole constructor alphabet
    assert seen == {
        Ax, TopR, Rfl, Cut, NegL, NegR, AndL, AndR, AllL, AllR, Eql, Ind,
    }


def test_family_round_trips():
    for gen in FAMILIES.values():
        for n in range(4):
            p, ctx = gen(n)
            text = print_document(p, ctx)
            doc = parse_document(text)
            assert proof_eq(doc.proof, p)
            assert doc.ctx == ctx
            assert print_document(doc.proof, doc.ctx) == text


def test_random_round_trips():
    for seed in range(40):
        p, ctx = random_proof(random.Random(seed), steps=6)
        doc = parse_document(print_document(p, ctx))
        assert proof_eq(doc.proof, p)
        assert doc.ctx == ctx


def test_custom_types_round_trip():
    text = """
(document
  (signature (type elt) (const c elt) (const R (-> elt o)))
  (context (-1 (R c)) (1 (ex (x elt) (R x))))
  (proof (all-l 1 c 2 (ax -1 2))))
"""
    doc = parse_document(text)
    check(doc.proof, doc.ctx)
    out = print_document(doc.proof, doc.ctx)
    assert "(type elt)" in out
    again = parse_document(out)
    assert proof_eq(doc.proof, again.proof)


# ---------------------------------------------------------------- errors


@pytest.mark.parametrize(
    "text,message",
    [
        ("", "1:1: empty input"),
        ("(document (context (1 top)) (proof (top-r 1))", "1:1: unclosed '('"),
        (
            "(document (context (1 top)) (proof (top-r 1))) junk",
            "1:48: trailing input after expression",
        ),
        (
            "(document (context (0 top)) (proof (top-r 1)))",
            "1:21: hypothesis 0 is forbidden",
        ),
        (
            "(document (context (1 (Q 0))) (proof (top-r 1)))",
            "1:24: unbound name 'Q'",
        ),
        (
            "(document (signature (const P (-> nat o)))"
            " (context (1 (P top))) (proof (top-r 1)))",
            "1:56: ill-typed term: argument top : o does not match domain nat",
        ),
        (
            "(document (signature (const P (-> nat o)))"
            " (context (1 (P 0))) (proof (frob 1)))",
            "1:71: unknown proof constructor 'frob'",
        ),
        (
            "(document (context (1 top)) (proof (top-r 1)) (proof (top-r 1)))",
            "1:47: duplicate proof section",
        ),
        (
            "(document (context (1 top) (1 bot)) (proof (top-r 1)))",
            "1:28: duplicate hypothesis 1",
        ),
        (
            "(document (context (1 0)) (proof (top-r 1)))",
            "1:20: context formula has type nat, expected o",
        ),
        (
            "(document\n  (context (1 top))\n  (proof (top-r x)))",
            "3:17: expected a hypothesis, got 'x'",
        ),
    ],
)
def test_error_positions(text, message):
    with pytest.raises(ParseError) as e:
        parse_document(text)
    assert str(e.value) == message


def test_builtin_name_collision_on_print():
    bad = app(const("and", arrow(nat, o)), num(0))
    with pytest.raises(SerializeError, match="collides"):
        print_document(ax(-1, 2), {-1: bad, 2: bad})


def test_constant_at_two_types_on_print():
    f = app(const("g", arrow(nat, o)), num(0))
    g = eq(const("g", nat), num(0))
    with pytest.raises(SerializeError, match="two types"):
        print_document(ax(-1, 2), {-1: f, 2: g})
