"""Instance extraction and ground validation."""

import pytest

from lkt.families import ind_linear, linear, linear_cut, square_diagonal
from lkt.formulas import allq, conj, eq, imp, num
from lkt.herbrand import (
    EqualityPresent,
    NotQuantifierFree,
    QuantifiedCut,
    extract_instances,
    herbrand_sequent,
    validate_ground,
)
from lkt.normalize import Policy, normalize
from lkt.proofs import alll, allr, andl, ax, cut
from lkt.terms import app, arrow, const, nat, o, var
from lkt.typecheck import Sequent, check

P = const("P", arrow(nat, o))
Q = const("Q", arrow(nat, o))


def pn(k):
    return app(P, num(k))


def test_linear_instances():
    p, ctx = linear(3)
    inst = extract_instances(p, ctx)
    assert set(inst) == {-2}
    assert inst[-2] == {(num(0),), (num(1),), (num(2),)}


def test_linear_herbrand_validates():
    for n in range(7):
        p, ctx = linear(n)
        assert validate_ground(herbrand_sequent(p, ctx))


def test_cut_family_matches_cut_free_family():
    # eliminating the doubling cuts of linear_cut(n) rebuilds the
    # instance set of the plain ladder at 2^n
    for n in range(1, 4):
        p, ctx = linear_cut(n)
        q = normalize(p, policy=Policy.UNTIL_QFREE)
        assert extract_instances(q, ctx) == extract_instances(*linear(2**n))


def test_square_diagonal_instances_are_pairs():
    p, ctx = square_diagonal(3)
    inst = extract_instances(p, ctx)
    vecs = inst[-3]
    assert all(len(v) == 2 for v in vecs)
    assert len(vecs) == 3


def test_quantified_cut_rejected():
    x = var("x", nat)
    f = allq(x, app(P, x))
    p = cut(
        f,
        1,
        allr(1, var("y", nat), 2, alll(-3, var("y", nat), -4, ax(-4, 2))),
        -5,
        alll(-5, num(0), -6, ax(-6, 7)),
    )
    ctx = {-3: f, 7: pn(0)}
    check(p, ctx)
    with pytest.raises(QuantifiedCut):
        extract_instances(p, ctx)


def test_induction_rejected():
    p, ctx = ind_linear(2)
    with pytest.raises(QuantifiedCut, match="induction"):
        herbrand_sequent(p, ctx)


def test_equality_rejected_at_validation():
    with pytest.raises(EqualityPresent):
        validate_ground(Sequent([eq(num(0), num(0))], []))


def test_leftover_quantifier_rejected_at_validation():
    x = var("x", nat)
    y = var("y", nat)
    f = allq(x, conj(app(P, x), allq(y, app(Q, y))))
    p = alll(-1, num(0), -2, andl(-2, -3, -4, ax(-3, 5)))
    ctx = {-1: f, 5: pn(0)}
    check(p, ctx)
    seq = herbrand_sequent(p, ctx)
    with pytest.raises(NotQuantifierFree):
        validate_ground(seq)


def test_validate_ground_decides():
    assert validate_ground(Sequent([pn(0)], [pn(0)]))
    assert validate_ground(Sequent([pn(0), imp(pn(0), pn(1))], [pn(1)]))
    assert not validate_ground(Sequent([pn(0)], [pn(1)]))
    # a gap in the chain is caught
    assert not validate_ground(Sequent([pn(0), imp(pn(0), pn(1))], [pn(2)]))


def test_validation_beyond_truth_table_range():
    # more than a truth table's worth of atoms forces the sequent search
    p, ctx = linear(20)
    assert validate_ground(herbrand_sequent(p, ctx))
    bad = Sequent(
        [pn(0)] + [imp(pn(k), pn(k + 1)) for k in range(20) if k != 9],
        [pn(20)],
    )
    assert not validate_ground(bad)


def test_instances_empty_for_propositional_proofs():
    A = const("A", o)
    p = ax(-1, 2)
    ctx = {-1: A, 2: A}
    assert extract_instances(p, ctx) == {}
    seq = herbrand_sequent(p, ctx)
    assert validate_ground(seq)
