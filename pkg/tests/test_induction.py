"""Induction unfolding: instance sets, rewrite traces, stuck targets."""

import pytest

from lkt.families import (
    _plus,
    add_defs,
    add_defs_theorem,
    ind_linear,
    linear,
    plus_defs,
)
from lkt.formulas import num, sucs
from lkt.induction import (
    StuckTerm,
    constructor_normal,
    eliminate_inductions,
    is_constructor_form,
    rewrite_trace,
    rules_of_context,
    transform_ind,
    unfold_once,
)
from lkt.normalize import normalize, stuck_cuts
from lkt.proofs import AllL, Eql, Ind, count_nodes, cut_count, iter_nodes
from lkt.typecheck import check


def step_instances(p):
    return {nd.instance for nd in iter_nodes(p) if type(nd) is AllL}


def test_ind_linear_unfolds_to_instance_ladder():
    for n in range(8):
        p, ctx = ind_linear(n)
        q = eliminate_inductions(p, ctx)
        check(q, ctx)
        assert count_nodes(q, Ind) == 0
        assert step_instances(q) == {num(k) for k in range(n)}


def test_unfolded_matches_direct_family_size():
    # unfolding the compressed proof reproduces the explicit ladder's size
    for n in range(8):
        p, ctx = ind_linear(n)
        q = eliminate_inductions(p, ctx)
        assert q.size == linear(n)[0].size


def test_add_defs_census():
    for k in range(1, 6):
        p, ctx = add_defs(k)
        q = eliminate_inductions(p, ctx)
        check(q, ctx)
        assert count_nodes(q, Ind) == 0
        assert cut_count(q) == k - 1
        assert count_nodes(q, AllL) == 2 * k + 1
        assert count_nodes(q, Eql) == 2 * k


def test_add_defs_rewrite_contexts():
    # numeral 1: the two equation steps rewrite under these contexts
    p, ctx = add_defs(1)
    q = eliminate_inductions(p, ctx)
    got = [str(nd.context) for nd in iter_nodes(q) if type(nd) is Eql]
    assert sorted(got) == [
        "(lam z (= (s z) (s 0)))",
        "(lam z (= z (s 0)))",
    ]


def test_add_defs_leaves_atomic_equation_cuts():
    p, ctx = add_defs(2)
    q = normalize(eliminate_inductions(p, ctx))
    check(q, ctx)
    stuck = stuck_cuts(q)
    assert len(stuck) == 1
    assert str(stuck[0].formula) == "(= (plus 0 (s 0)) (s 0))"


def test_variable_target_is_stuck():
    p, ctx = add_defs_theorem()
    q = eliminate_inductions(p, ctx)
    check(q, ctx)
    assert count_nodes(q, Ind) == 1
    nd = next(n for n in iter_nodes(q) if type(n) is Ind)
    with pytest.raises(StuckTerm, match="variable"):
        transform_ind(nd, rules_of_context(ctx))


def test_unfold_once_peels_one_successor():
    p, _ = ind_linear(3)
    nd = next(n for n in iter_nodes(p) if type(n) is Ind)
    q = unfold_once(nd)
    assert count_nodes(q, Ind) == 1
    inner = next(n for n in iter_nodes(q) if type(n) is Ind)
    assert inner.target is num(2)


def plus_rules():
    d1, d2 = plus_defs()
    return rules_of_context({-1: d1, -2: d2})


def test_rewrite_trace_on_plus():
    rules = plus_rules()
    nf, steps = rewrite_trace(_plus(num(0), num(1)), rules)
    assert nf is num(1)
    assert len(steps) == 2
    nf, steps = rewrite_trace(_plus(num(2), num(3)), rules)
    assert nf is num(5)
    assert len(steps) == 4


def test_constructor_normal():
    rules = plus_rules()
    assert constructor_normal(_plus(num(1), num(1)), rules) is num(2)
    assert is_constructor_form(num(7))
    assert not is_constructor_form(_plus(num(0), num(0)))
    assert is_constructor_form(sucs(num(0), 3))


def test_rewrite_trace_respects_limit():
    rules = plus_rules()
    with pytest.raises(StuckTerm):
        rewrite_trace(_plus(num(4), num(4)), rules, limit=2)


def test_elimination_preserves_end_sequent():
    for gen in (ind_linear, add_defs):
        for n in range(5):
            p, ctx = gen(n)
            q = eliminate_inductions(p, ctx)
            check(q, ctx)
