"""Tree-of-sequents baseline: translation, elimination, readback."""

import pytest

from lkt.families import (
    ind_linear,
    linear,
    linear_acnf,
    linear_cut,
    square_cut,
    square_diagonal,
)
from lkt.formulas import allq, imp, num
from lkt.herbrand import herbrand_sequent, validate_ground
from lkt.lk import (
    Seq,
    cn,
    UnsupportedNode,
    audit_tree,
    contract_to,
    gentzen_eliminate,
    of_tree,
    seq_of_ctx,
    subst_tree,
    t_allL,
    t_ax,
    t_impL,
    t_wl,
    to_tree,
    tree_cut_count,
    tree_size,
    weaken_to,
)
from lkt.normalize import normalize
from lkt.proofs import cut_count
from lkt.terms import app, arrow, const, nat, o, var
from lkt.typecheck import check, end_sequent

EQ_FREE = (linear, linear_cut, linear_acnf, square_diagonal, square_cut)

P = const("P", arrow(nat, o))


def pn(k):
    return app(P, num(k))


def test_translation_concludes_end_sequent():
    for gen in EQ_FREE:
        for n in range(5):
            p, ctx = gen(n)
            t = to_tree(p, ctx)
            audit_tree(t)
            assert t.seq == seq_of_ctx(ctx)


def test_translation_counts_cuts():
    for n in range(5):
        t = to_tree(*linear_cut(n))
        assert tree_cut_count(t) == cut_count(linear_cut(n)[0])
        assert t.has_cut == (tree_cut_count(t) > 0)


def test_induction_not_translatable():
    p, ctx = ind_linear(2)
    with pytest.raises(UnsupportedNode):
        to_tree(p, ctx)


def test_gentzen_eliminate_removes_cuts():
    for gen in EQ_FREE:
        for n in range(4):
            p, ctx = gen(n)
            t = to_tree(p, ctx)
            r = gentzen_eliminate(t)
            audit_tree(r)
            assert tree_cut_count(r) == 0
            assert r.seq == t.seq


def test_readback_checks_and_agrees():
    for gen in EQ_FREE:
        for n in range(4):
            p, ctx = gen(n)
            r = gentzen_eliminate(to_tree(p, ctx))
            q, qctx = of_tree(r)
            check(q, qctx)
            assert end_sequent(qctx) == end_sequent(ctx)


def test_readback_herbrand_matches_term_engine():
    for n in range(1, 4):
        p, ctx = linear_cut(n)
        term_side = herbrand_sequent(normalize(p), ctx)
        q, qctx = of_tree(gentzen_eliminate(to_tree(p, ctx)))
        tree_side = herbrand_sequent(q, qctx)
        assert validate_ground(term_side)
        assert validate_ground(tree_side)
        assert term_side == tree_side


def test_tree_engine_blows_up_where_terms_do_not():
    # duplication of whole subtrees vs name sharing
    p, ctx = linear_cut(4)
    t = gentzen_eliminate(to_tree(p, ctx))
    q = normalize(p)
    assert tree_size(t) > q.size


def test_weaken_contract_roundtrip():
    A = const("A", o)
    B = const("B", o)
    t = t_ax(A)
    wide = weaken_to(t, Seq([A, B], [A, B]))
    audit_tree(wide)
    assert wide.seq == Seq([A, B], [A, B])
    doubled = t_wl(A, wide)
    back = contract_to(doubled, wide.seq)
    audit_tree(back)
    assert back.seq == wide.seq


def test_subst_tree_instantiates_free_variables():
    x = var("x", nat)
    t = t_impL(
        imp(app(P, x), pn(1)),
        t_ax(app(P, x)),
        t_ax(pn(1)),
    )
    audit_tree(t)
    s = subst_tree(t, {x: num(0)})
    audit_tree(s)
    assert s.seq == Seq([pn(0), imp(pn(0), pn(1))], [pn(1)])


def test_subst_tree_reaches_quantifier_instances():
    x = var("x", nat)
    y = var("y", nat)
    f = allq(x, app(P, x))
    t = t_allL(f, y, t_ax(app(P, y)))
    audit_tree(t)
    s = subst_tree(t, {y: num(3)})
    audit_tree(s)
    assert s.seq == Seq([cn(f)], [pn(3)])
    assert s.prems[0].seq == Seq([pn(3)], [pn(3)])


def test_subst_tree_skips_dead_substitutions():
    t = to_tree(*linear(3))
    z = var("z", nat)
    assert subst_tree(t, {z: num(0)}) is t


def test_rule_constructors_reject_missing_formulas():
    A = const("A", o)
    B = const("B", o)
    good = t_impL(imp(A, B), t_ax(A), t_ax(B))
    audit_tree(good)
    with pytest.raises(Exception):
        t_impL(imp(A, B), t_ax(B), t_ax(A))
