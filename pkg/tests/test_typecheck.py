"""Checker coverage: every rule's happy path and every error class."""

import pytest

from lkt.formulas import allq, bot, conj, disj, eq, exq, imp, neg, num, top
from lkt.proofs import (
    alll,
    allr,
    andl,
    andr,
    ax,
    cut,
    eql,
    ind,
    negl,
    negr,
    rfl,
    topr,
)
from lkt.terms import abs_, app, arrow, const, nat, o, var
from lkt.typecheck import (
    CutFormulaMismatch,
    EigenvariableViolation,
    EquationShapeMismatch,
    FormulaMismatch,
    IndTargetMismatch,
    PolarityMismatch,
    Sequent,
    UnknownHypothesis,
    check,
    child_entries,
    end_sequent,
)

P = const("P", arrow(nat, o))
Q = const("Q", o)
R = const("R", o)


def pn(e):
    return app(P, e)


# ---------------------------------------------------------------- happy paths


def test_ax():
    check(ax(-1, 2), {-1: Q, 2: Q})


def test_topr_both_sides():
    check(topr(1), {1: top})
    check(topr(-1), {-1: bot})


def test_rfl():
    check(rfl(1), {1: eq(num(2), num(2))})


def test_cut():
    p = cut(Q, 1, ax(-2, 1), -3, ax(-3, 4))
    check(p, {-2: Q, 4: Q})


def test_neg_rules():
    # not Q on the left, Q on the right: NegL moves Q across
    check(negl(-1, 2, ax(-3, 2)), {-1: neg(Q), -3: Q})
    check(negr(1, -2, ax(-2, 3)), {1: neg(Q), 3: Q})


def test_and_or_imp():
    check(andl(-1, -2, -3, ax(-2, 4)), {-1: conj(Q, R), 4: Q})
    check(andl(1, 2, 3, ax(-4, 2)), {1: disj(Q, R), -4: Q})
    check(andl(1, -2, 3, ax(-2, 3)), {1: imp(Q, Q)})
    check(andr(1, 2, ax(-3, 2), 4, ax(-5, 4)), {1: conj(Q, R), -3: Q, -5: R})
    check(andr(-1, -2, ax(-2, 3), -4, ax(-4, 3)), {-1: disj(Q, Q), 3: Q})
    check(andr(-1, 2, ax(-3, 2), -4, ax(-4, 5)), {-1: imp(Q, R), -3: Q, 5: R})


def test_all_rules():
    x = var("x", nat)
    f = allq(x, pn(x))
    check(alll(-1, num(3), -2, ax(-2, 3)), {-1: f, 3: pn(num(3))})
    g = exq(x, pn(x))
    check(alll(1, num(3), 2, ax(-3, 2)), {1: g, -3: pn(num(3))})
    y = var("y", nat)
    fi = allq(x, imp(pn(x), pn(x)))
    check(allr(1, y, 2, andl(2, -3, 4, ax(-3, 4))), {1: fi})
    check(allr(-1, y, -2, alll(2, y, 3, ax(-2, 3))), {-1: g, 2: g})


def test_eql_both_directions():
    e = eq(num(0), num(1))
    ctxfn = abs_(var("z", nat), pn(var("z", nat)))
    # left to right: main holds C[0], sub gets C[1]
    p = eql(-1, -2, True, ctxfn, -3, ax(-3, 4))
    check(p, {-1: e, -2: pn(num(0)), 4: pn(num(1))})
    q = eql(-1, 2, False, ctxfn, 3, ax(-4, 3))
    check(q, {-1: e, 2: pn(num(1)), -4: pn(num(0))})


def test_ind():
    # constant motive closes both branches without auxiliary lemmas
    w = var("w", nat)
    motive = abs_(var("z", nat), top)
    p = ind(1, motive, num(2), 2, topr(2), w, -4, 5, topr(5))
    check(p, {1: top})


def test_check_with_substitution():
    x = var("x", nat)
    check(ax(-1, 2), {-1: pn(x), 2: pn(x)}, subst={x: num(7)})


def test_substitution_type_mismatch():
    x = var("x", nat)
    with pytest.raises(FormulaMismatch):
        check(ax(-1, 2), {-1: pn(x), 2: pn(x)}, subst={x: Q})


def test_substitution_can_break_a_proof():
    # distinct variables alias after substitution, or fail to
    x = var("x", nat)
    y = var("y", nat)
    ctx = {-1: pn(x), 2: pn(y)}
    check(ax(-1, 2), ctx, subst={x: num(1), y: num(1)})
    with pytest.raises(FormulaMismatch):
        check(ax(-1, 2), ctx, subst={x: num(1), y: num(2)})


# ---------------------------------------------------------------- error paths


def test_unknown_hypothesis():
    with pytest.raises(UnknownHypothesis):
        check(ax(-1, 2), {-1: Q})


def test_hyp_zero_rejected_in_ctx():
    with pytest.raises(PolarityMismatch):
        check(topr(1), {0: Q, 1: top})


def test_ctx_entry_not_a_formula():
    with pytest.raises(FormulaMismatch):
        check(topr(1), {1: top, -2: num(3)})


def test_ax_polarity():
    with pytest.raises(PolarityMismatch):
        check(ax(1, 2), {1: Q, 2: Q})
    with pytest.raises(PolarityMismatch):
        check(ax(-1, -2), {-1: Q, -2: Q})


def test_ax_formula_mismatch():
    with pytest.raises(FormulaMismatch):
        check(ax(-1, 2), {-1: Q, 2: R})


def test_rfl_shape():
    with pytest.raises(EquationShapeMismatch):
        check(rfl(1), {1: Q})
    with pytest.raises(FormulaMismatch):
        check(rfl(1), {1: eq(num(1), num(2))})


def test_cut_formula_not_o():
    with pytest.raises(CutFormulaMismatch):
        check(cut(num(3), 1, ax(-2, 1), -3, ax(-3, 4)), {-2: Q, 4: Q})


def test_cut_polarity():
    with pytest.raises(PolarityMismatch):
        check(cut(Q, -1, ax(-2, -1), -3, ax(-3, 4)), {-2: Q, 4: Q})
    with pytest.raises(PolarityMismatch):
        check(cut(Q, 1, ax(-2, 1), 3, ax(3, 4)), {-2: Q, 4: Q})


def test_negl_wrong_connective():
    with pytest.raises(FormulaMismatch):
        check(negl(-1, 2, ax(-3, 2)), {-1: conj(Q, R), -3: Q})


def test_andl_on_ex_rejected():
    f = exq(var("x", nat), pn(var("x", nat)))
    with pytest.raises(FormulaMismatch):
        check(andl(-1, -2, -3, ax(-2, 4)), {-1: f, 4: Q})


def test_andl_aux_sign():
    with pytest.raises(PolarityMismatch):
        check(andl(-1, -2, 3, ax(-2, 4)), {-1: conj(Q, R), 4: Q})


def test_andr_aux_sign():
    with pytest.raises(PolarityMismatch):
        check(
            andr(1, 2, ax(-3, 2), -4, ax(-4, 5)),
            {1: conj(Q, R), -3: Q, 5: R},
        )


def test_alll_instance_type():
    f = allq(var("x", nat), pn(var("x", nat)))
    with pytest.raises(FormulaMismatch):
        check(alll(-1, Q, -2, ax(-2, 3)), {-1: f, 3: pn(num(3))})


def test_alll_aux_formula():
    f = allq(var("x", nat), pn(var("x", nat)))
    with pytest.raises(FormulaMismatch):
        check(alll(-1, num(3), -2, ax(-2, 3)), {-1: f, 3: pn(num(4))})


def test_allr_quantifier_orientation():
    # AllR on a negative 'all' hypothesis is not a rule
    f = allq(var("x", nat), pn(var("x", nat)))
    y = var("y", nat)
    with pytest.raises(FormulaMismatch):
        check(allr(-1, y, -2, ax(-2, 3)), {-1: f, 3: pn(y)})


def test_eigenvariable_violation():
    f = allq(var("x", nat), pn(var("x", nat)))
    y = var("y", nat)
    with pytest.raises(EigenvariableViolation):
        check(allr(1, y, 2, ax(-3, 2)), {1: f, -3: pn(y)})


def test_eql_eq_hyp_polarity():
    e = eq(num(0), num(1))
    ctxfn = abs_(var("z", nat), pn(var("z", nat)))
    with pytest.raises(PolarityMismatch):
        check(
            eql(1, -2, True, ctxfn, -3, ax(-3, 4)),
            {1: e, -2: pn(num(0)), 4: pn(num(1))},
        )


def test_eql_not_an_equation():
    ctxfn = abs_(var("z", nat), pn(var("z", nat)))
    with pytest.raises(EquationShapeMismatch):
        check(
            eql(-1, -2, True, ctxfn, -3, ax(-3, 4)),
            {-1: Q, -2: pn(num(0)), 4: pn(num(1))},
        )


def test_eql_context_type():
    e = eq(num(0), num(1))
    with pytest.raises(FormulaMismatch):
        check(
            eql(-1, -2, True, abs_(var("z", nat), var("z", nat)), -3, ax(-3, 4)),
            {-1: e, -2: pn(num(0)), 4: pn(num(1))},
        )


def test_eql_main_mismatch():
    e = eq(num(0), num(1))
    ctxfn = abs_(var("z", nat), pn(var("z", nat)))
    with pytest.raises(FormulaMismatch):
        check(
            eql(-1, -2, True, ctxfn, -3, ax(-3, 4)),
            {-1: e, -2: pn(num(5)), 4: pn(num(1))},
        )


def test_ind_target_type():
    w = var("w", nat)
    motive = abs_(var("z", nat), top)
    p = ind(1, motive, Q, 2, topr(2), w, -4, 5, topr(5))
    with pytest.raises(IndTargetMismatch):
        check(p, {1: top})


def test_ind_main_mismatch():
    w = var("w", nat)
    motive = abs_(var("z", nat), top)
    p = ind(1, motive, num(2), 2, topr(2), w, -4, 5, topr(5))
    with pytest.raises(FormulaMismatch):
        check(p, {1: Q})


# ---------------------------------------------------------------- sequents


def test_sequent_is_a_multiset():
    assert Sequent([Q, Q], [R]) != Sequent([Q], [R])
    assert Sequent([Q, R], []) == Sequent([R, Q], [])


def test_sequent_ignores_alpha():
    f = allq(var("x", nat), pn(var("x", nat)))
    g = allq(var("y", nat), pn(var("y", nat)))
    assert Sequent([f], []) == Sequent([g], [])


def test_end_sequent_splits_by_sign():
    s = end_sequent({-1: Q, 2: R, -3: Q})
    assert s == Sequent([Q, Q], [R])


def test_end_sequent_applies_subst():
    x = var("x", nat)
    s = end_sequent({-1: pn(x)}, subst={x: num(2)})
    assert s == Sequent([pn(num(2))], [])


def test_child_entries_cut():
    p = cut(Q, 1, ax(-2, 1), -3, ax(-3, 4))
    nctx = {-2: Q, 4: Q}
    kids = child_entries(p, nctx)
    assert len(kids) == 2
    (left, lctx), (right, rctx) = kids
    assert left is p.left and lctx == {1: Q}
    assert right is p.right and rctx == {-3: Q}
