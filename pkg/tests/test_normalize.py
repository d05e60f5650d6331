"""Cut reduction: frozen small vectors, policies, budgets, stuck cuts."""

import pytest

from lkt.families import linear, linear_acnf, linear_cut, random_proof
from lkt.formulas import allq, conj, eq, num
from lkt.normalize import (
    BudgetExhausted,
    Policy,
    is_normal,
    normal_violations,
    normalize,
    stuck_cuts,
)
from lkt.proofs import (
    AllL,
    alll,
    allr,
    andl,
    andr,
    ax,
    count_nodes,
    cut,
    cut_count,
    eql,
    proof_eq,
    rfl,
)
from lkt.terms import abs_, app, arrow, const, nat, o, var
from lkt.typecheck import check

A = const("A", o)
B = const("B", o)
P = const("P", arrow(nat, o))


def test_conjunction_cut_collapses_to_axiom():
    p = cut(
        conj(A, B),
        5,
        andr(5, 6, ax(-1, 6), 7, ax(-2, 7)),
        -8,
        andl(-8, -9, -10, ax(-9, 11)),
    )
    ctx = {-1: A, -2: B, 11: A}
    check(p, ctx)
    q = normalize(p)
    check(q, ctx)
    assert proof_eq(q, ax(-1, 11))


def test_quantifier_cut_instantiates_eigenvariable():
    x = var("x", nat)
    y = var("y", nat)
    f = allq(x, app(P, x))
    p = cut(
        f,
        1,
        allr(1, y, 2, alll(-3, y, -4, ax(-4, 2))),
        -5,
        alll(-5, num(5), -6, ax(-6, 7)),
    )
    ctx = {-3: f, 7: app(P, num(5))}
    check(p, ctx)
    q = normalize(p)
    check(q, ctx)
    assert proof_eq(q, alll(-3, num(5), -4, ax(-4, 7)))


def test_equation_cut_is_stuck():
    # Rfl against Eql on x = x: no clause applies, the cut survives and
    # still counts as normal. Removing such cuts is the atomizer's job.
    x = var("x", nat)
    ctxfn = abs_(var("z", nat), app(P, var("z", nat)))
    px = app(P, x)
    p = cut(eq(x, x), 1, rfl(1), -2, eql(-2, -3, True, ctxfn, -4, ax(-4, 5)))
    ctx = {-3: px, 5: px}
    check(p, ctx)
    q = normalize(p)
    check(q, ctx)
    assert cut_count(q) == 1
    assert is_normal(q, Policy.FULL)
    assert normal_violations(q, Policy.FULL) == []
    assert len(stuck_cuts(q)) == 1


def test_linear_cut_census():
    p, ctx = linear_cut(3)
    q = normalize(p)
    check(q, ctx)
    assert cut_count(q) == 0
    assert count_nodes(q, AllL) == 8
    assert q.size == 25


def test_budget_exhaustion():
    p, _ = linear_cut(3)
    with pytest.raises(BudgetExhausted):
        normalize(p, budget=5)


def test_policies_on_atomic_cut_family():
    p, ctx = linear_acnf(4)
    qa = normalize(p, policy=Policy.UNTIL_ATOMIC)
    check(qa, ctx)
    assert cut_count(qa) == 4
    assert is_normal(qa, Policy.UNTIL_ATOMIC)
    assert not is_normal(qa, Policy.FULL)
    qq = normalize(p, policy=Policy.UNTIL_QFREE)
    assert cut_count(qq) == 4
    qf = normalize(p, policy=Policy.FULL)
    check(qf, ctx)
    assert cut_count(qf) == 0


def test_preserves_end_sequent():
    for n in range(5):
        p, ctx = linear_cut(n)
        q = normalize(p)
        check(q, ctx)
        assert cut_count(q) == 0


def test_idempotent_on_random_proofs():
    import random

    rng = random.Random(20240)
    for _ in range(50):
        p, ctx = random_proof(rng, steps=5)
        check(p, ctx)
        q = normalize(p)
        check(q, ctx)
        assert proof_eq(normalize(q), q)


def test_normal_means_no_violations():
    for n in range(4):
        p, _ = linear(n)
        assert is_normal(p, Policy.FULL) == (normal_violations(p) == [])
