import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lkt.families import random_proof
from lkt.formulas import allq, conj, eq, imp, num, zero
from lkt.proofs import (
    alll,
    allr,
    andl,
    andr,
    audit,
    ax,
    cut,
    cut_count,
    eql,
    fresh_from_mask,
    fresh_hyp,
    freshen_apart,
    hbit,
    hyp_mask,
    hyps_of_mask,
    is_main_at,
    iter_nodes,
    main_hyps,
    negl,
    proof_eq,
    proof_subst,
    rename_hyp,
    rfl,
    skip_alll,
    skip_andr,
    skip_cut,
    skip_negl,
    topr,
)
from lkt.terms import abs_, app, arrow, const, nat, o, var
from lkt.typecheck import check

x = var("x", nat)
y = var("y", nat)


def zero_p():
    return app(const("P0", arrow(nat, o)), zero)


def test_hbit_is_injective_over_small_hyps():
    hs = [h for h in range(-12, 13) if h != 0]
    bits = {hbit(h) for h in hs}
    assert len(bits) == len(hs)
    assert all(b.bit_count() == 1 for b in bits)


def test_hyp_mask_round_trips():
    hs = [-3, 1, 7, -1]
    m = hyp_mask(hs)
    assert set(hyps_of_mask(m)) == set(hs)
    assert hyp_mask([]) == 0
    assert hyps_of_mask(0) == []


def test_fresh_hyp_and_fresh_from_mask():
    assert fresh_hyp(True, [-1, 2, -3]) == 4
    assert fresh_hyp(False, [-1, 2, -3]) == -4
    m = hyp_mask([-1, 2, -3])
    assert fresh_from_mask(m, True) == 4
    assert fresh_from_mask(m, False) == -4
    assert fresh_from_mask(0, True) == 1


def test_node_caches():
    p = ax(-1, 2)
    assert p.fh == hyp_mask([-1, 2])
    assert p.size == 1
    q = alll(-1, num(3), -4, ax(-4, 2))
    assert set(hyps_of_mask(q.fh)) == {-1, 2}
    assert q.size == 2
    assert num(3).free_vars == frozenset()
    r = alll(-1, x, -4, ax(-4, 2))
    assert r.fv == {x}


def test_binders_hide_aux_hyps():
    inner = ax(-2, 3)
    p = negl(-1, 3, inner)
    assert set(hyps_of_mask(p.fh)) == {-1, -2}
    q = andr(1, 2, ax(-1, 2), 3, ax(-1, 3))
    assert set(hyps_of_mask(q.fh)) == {-1, 1}
    r = cut(zero_p(), 5, ax(-1, 5), -6, ax(-6, 2))
    assert set(hyps_of_mask(r.fh)) == {-1, 2}


def test_rename_hyp():
    p = alll(-2, zero, -3, andr(-3, 4, ax(-1, 4), -5, ax(-5, 1)))
    q = rename_hyp(p, -2, -9)
    assert q.main == -9
    assert set(hyps_of_mask(q.fh)) == {-1, -9, 1}
    assert rename_hyp(p, -7, -8) is p


def test_rename_hyp_avoids_capture():
    p = alll(-2, zero, -3, andr(-3, 4, ax(-1, 4), -5, ax(-5, 1)))
    # The target name is bound inside, so the binder moves out of the way.
    q = rename_hyp(p, -1, -3)
    assert set(hyps_of_mask(q.fh)) == {-2, -3, 1}
    assert q.aux != -3
    assert q.sub.main == q.aux
    assert proof_eq(q.sub.left, ax(-3, 4))


def test_proof_subst_renames_colliding_eigens():
    # all-r binds x; substituting a term mentioning x must rename it.
    pf = allr(1, x, 2, ax(-1, 2))
    q = proof_subst(pf, {var("u", nat): x})
    assert q.eigen is not x or pf.eigen is x
    pf2 = allr(1, x, 2, alll(-2, x, -3, ax(-3, 2)))
    out = proof_subst(pf2, {var("u", nat): zero})
    assert out is pf2


def test_proof_eq_and_hash_stability():
    a1, ctx1 = random_proof(random.Random(11), steps=8)
    a2, ctx2 = random_proof(random.Random(11), steps=8)
    assert proof_eq(a1, a2)
    assert a1.hsh == a2.hsh
    assert ctx1 == ctx2
    b, _ = random_proof(random.Random(12), steps=8)
    assert not proof_eq(a1, b)


def test_skip_builders_drop_vacuous_nodes():
    leaf = ax(-1, 1)
    assert skip_negl(-2, 3, leaf) is leaf
    assert skip_alll(-2, zero, -3, leaf) is leaf
    assert skip_cut(conj(zero_p(), zero_p()), 2, leaf, -3, leaf) is leaf
    assert skip_andr(1, 2, leaf, 3, leaf) is leaf
    used = negl(-2, 3, ax(-1, 3))
    assert skip_negl(-2, 3, ax(-1, 3)) is not ax(-1, 3)
    assert type(used).__name__ == "NegL"


def test_main_hyps():
    p = alll(-2, zero, -3, ax(-3, 1))
    assert main_hyps(p) == (-2,)
    assert is_main_at(p, -2)
    assert not is_main_at(p, -3)
    e = eql(-1, 2, True, abs_(x, eq(x, zero)), 3, rfl(3))
    assert set(main_hyps(e)) == {-1, 2}


def test_freshen_apart_separates_binders():
    # The same aux name bound on both cut branches.
    f = zero_p()
    p = cut(f, 5, andr(5, 6, ax(-1, 6), 7, ax(-1, 7)), -5, negl(-5, 8, ax(-1, 8)))
    q = freshen_apart(p)
    binders = []
    for node in iter_nodes(q):
        t = type(node).__name__
        if t == "Cut":
            binders += [node.h1, node.h2]
        elif t == "AndR":
            binders += [node.aux1, node.aux2]
        elif t == "NegL":
            binders.append(node.aux)
    assert len(binders) == len(set(binders))
    assert all(abs(b) > 1 for b in binders)


def test_iter_and_cut_count():
    f = zero_p()
    p = cut(f, 1, ax(-1, 1), -2, cut(f, 3, ax(-2, 3), -4, ax(-4, 5)))
    assert cut_count(p) == 2
    assert sum(1 for _ in iter_nodes(p)) == p.size == 5


@given(st.integers(0, 10**9), st.integers(2, 10))
def test_random_proofs_check_and_audit(seed, steps):
    p, ctx = random_proof(random.Random(seed), steps=steps)
    check(p, ctx)
    assert audit(p)


@given(st.integers(0, 10**9))
def test_freshen_apart_preserves_checking(seed):
    p, ctx = random_proof(random.Random(seed), steps=7)
    q = freshen_apart(p)
    check(q, ctx)
    assert q.fh == p.fh
