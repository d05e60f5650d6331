"""Equality atomization: simulation shapes, orientation, error cases."""

import random

import pytest

from lkt.eqelim import PredicateEquation, UnsupportedShape, atomize_eqls, sim_eq
from lkt.families import add_defs
from lkt.formulas import (
    all_c,
    allq,
    conj,
    disj,
    eq,
    exq,
    imp,
    is_atom,
    neg,
    num,
    split,
)
from lkt.normalize import normalize
from lkt.proofs import (
    AndL,
    AndR,
    Ax,
    Cut,
    Eql,
    ax,
    count_nodes,
    eql,
    iter_nodes,
    proof_eq,
)
from lkt.terms import abs_, app, arrow, beta_normalize, const, nat, o, var
from lkt.typecheck import check

P = const("P", arrow(nat, o))
Q = const("Q", arrow(nat, o))
a = const("a", nat)
b = const("b", nat)
z = var("z", nat)


def checked_sim(body):
    """Build sim_eq for (lam z body), check it, return the proof."""
    cfn = abs_(z, body)
    p = sim_eq(cfn, -1, -2, 3)
    ca = beta_normalize(app(cfn, a))
    cb = beta_normalize(app(cfn, b))
    check(p, {-1: eq(a, b), -2: ca, 3: cb})
    return p


def atomic_body(nd):
    body = beta_normalize(app(nd.context, var("w", nat)))
    return is_atom(body) or split(body)[0] == "eq"


def test_sim_sizes():
    pz, qz = app(P, z), app(Q, z)
    y = var("y", nat)
    assert checked_sim(conj(pz, qz)).size == 6
    assert checked_sim(disj(pz, qz)).size == 7
    assert checked_sim(imp(pz, qz)).size == 6
    assert checked_sim(neg(pz)).size == 4
    assert checked_sim(pz).size == 2
    assert checked_sim(eq(z, num(0))).size == 2
    assert checked_sim(allq(y, conj(app(P, y), qz))).size == 7
    assert checked_sim(exq(y, conj(app(P, y), qz))).size == 7
    nested = conj(disj(pz, neg(qz)), imp(pz, qz))
    assert checked_sim(nested).size == 17


def test_sim_conjunction_shape():
    p = checked_sim(conj(app(P, z), app(Q, z)))
    assert type(p) is AndL
    assert type(p.sub) is AndR
    assert type(p.sub.left) is Eql and type(p.sub.right) is Eql
    assert type(p.sub.left.sub) is Ax and type(p.sub.right.sub) is Ax


def test_sim_vacuous_body_is_axiom():
    # z not free: nothing to rewrite, even under a connective
    p = checked_sim(conj(app(P, a), app(Q, b)))
    assert proof_eq(p, ax(-2, 3))


def test_sim_reverse_swaps_sides():
    cfn = abs_(z, app(P, z))
    p = sim_eq(cfn, -1, -2, 3, reverse=True)
    check(p, {-1: eq(a, b), -2: app(P, b), 3: app(P, a)})


def test_sim_contravariant_positions_flip():
    # under imp's antecedent the rewrite runs right to left
    pz = app(P, z)
    p = checked_sim(imp(pz, pz))
    dirs = sorted(nd.left_to_right for nd in iter_nodes(p) if type(nd) is Eql)
    assert dirs == [False, True]


def test_predicate_equation_rejected():
    w = var("w", o)
    with pytest.raises(PredicateEquation):
        sim_eq(abs_(w, w), -1, -2, 3)
    f = var("f", arrow(nat, nat))
    with pytest.raises(PredicateEquation):
        sim_eq(abs_(f, eq(app(f, num(0)), num(0))), -1, -2, 3)


def test_non_lambda_quantifier_payload_rejected():
    F = const("F", arrow(nat, arrow(nat, o)))
    body = app(all_c(nat), app(F, z))
    with pytest.raises(UnsupportedShape):
        sim_eq(abs_(z, body), -1, -2, 3)


def test_atomize_compound_eql():
    cfn = abs_(z, conj(app(P, z), app(Q, z)))
    ca = beta_normalize(app(cfn, a))
    cb = beta_normalize(app(cfn, b))
    p = eql(-1, -2, True, cfn, -4, ax(-4, 3))
    ctx = {-1: eq(a, b), -2: ca, 3: cb}
    check(p, ctx)
    q = atomize_eqls(p, ctx)
    check(q, ctx)
    assert all(atomic_body(nd) for nd in iter_nodes(q) if type(nd) is Eql)
    assert count_nodes(q, Eql) == 2


def test_atomize_leaves_atomic_steps_alone():
    cfn = abs_(z, app(P, z))
    p = eql(-1, -2, True, cfn, -4, ax(-4, 3))
    ctx = {-1: eq(a, b), -2: app(P, a), 3: app(P, b)}
    q = atomize_eqls(p, ctx)
    assert proof_eq(q, p)


def test_atomize_then_normalize_add_defs():
    for n in range(6):
        p, ctx = add_defs(n)
        q = normalize(atomize_eqls(p, ctx))
        check(q, ctx)
        for nd in iter_nodes(q):
            if type(nd) is Eql:
                assert atomic_body(nd)
            if type(nd) is Cut:
                f = nd.formula
                assert is_atom(f) or split(f)[0] == "eq"


def _rand_body(rng, depth):
    pz, qz = app(P, z), app(Q, z)
    atoms = [pz, qz, eq(z, num(rng.randrange(3))), app(P, a)]
    if depth == 0:
        return rng.choice(atoms)
    k = rng.randrange(6)
    if k == 0:
        return conj(_rand_body(rng, depth - 1), _rand_body(rng, depth - 1))
    if k == 1:
        return disj(_rand_body(rng, depth - 1), _rand_body(rng, depth - 1))
    if k == 2:
        return imp(_rand_body(rng, depth - 1), _rand_body(rng, depth - 1))
    if k == 3:
        return neg(_rand_body(rng, depth - 1))
    if k == 4:
        y = var(f"y{depth}", nat)
        return allq(y, conj(app(P, y), _rand_body(rng, depth - 1)))
    return rng.choice(atoms)


def test_sim_on_random_contexts():
    rng = random.Random(8451)
    for _ in range(60):
        body = _rand_body(rng, 3)
        p = checked_sim(body)
        for nd in iter_nodes(p):
            if type(nd) is Eql:
                assert atomic_body(nd)
