"""Reducing equality steps to atomic contexts.

An equality step whose context has a compound body is replaced by a cut
against a simulation proof that rewrites the formula connective by
connective, so every equality step that survives works on an atomic
context. The simulation flips rewrite direction at contravariant
positions (the left argument of an implication, under a negation).
"""
from __future__ import annotations

from .terms import (
    Abs,
    Arrow,
    Expr,
    abs_,
    app,
    beta_normalize,
    fresh_variant,
    subst_apply,
    var,
)
from .formulas import is_atom, o, split
from .proofs import (
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
    Proof,
    Rfl,
    TopR,
    alll,
    allr,
    andl,
    andr,
    ax,
    cut,
    eql,
    fresh_from_mask,
    hbit,
    hyp_mask,
    ind,
    negl,
    negr,
    rename_hyp,
)
from .typecheck import child_entries
from .deepstack import run_deep


class UnsupportedShape(Exception):
    """A context body the simulation cannot decompose."""


class PredicateEquation(Exception):
    """An equation between sides of type o or of arrow type; only
    individual equations can be atomized."""


def _as_abs(context: Expr) -> Abs:
    c = beta_normalize(context)
    if type(c) is Abs:
        return c
    z = fresh_variant(var("z", c.ty.dom), c.free_vars)
    return abs_(z, beta_normalize(app(c, z)))


def sim_eq(
    context: Expr,
    eq_hyp: int,
    h2: int,
    h3: int,
    reverse: bool = False,
    avoid_vars=frozenset(),
    avoid_hyps: int = 0,
):
    """A proof of h2: C[a] |- h3: C[b] using only atomic equality
    steps on eq_hyp, where (a, b) is the equation as written, or
    swapped when reverse is set.

    h2 is an antecedent name, h3 a succedent name; eq_hyp holds the
    equation. avoid_vars blocks eigenvariable names that are free in
    the surrounding context."""
    c = _as_abs(context)
    dom = c.ty.dom
    if dom is o or type(dom) is Arrow:
        raise PredicateEquation(f"equation sides have type {dom}")
    mask = [avoid_hyps | hbit(eq_hyp) | hbit(h2) | hbit(h3)]

    def fresh(pos: bool) -> int:
        h = fresh_from_mask(mask[0], pos)
        mask[0] |= hbit(h)
        return h

    zv = c.var

    def go(body: Expr, hn: int, hp: int, rev: bool, avoid) -> Proof:
        if zv not in body.free_vars:
            return ax(hn, hp)
        tag = split(body)
        k = tag[0]
        if k == "atom" or k == "eq":
            h4 = fresh(True)
            return eql(eq_hyp, hp, rev, abs_(zv, body), h4, ax(hn, h4))
        if k == "and":
            a, b = tag[1], tag[2]
            a1, a2 = fresh(False), fresh(False)
            b1, b2 = fresh(True), fresh(True)
            return andl(
                hn,
                a1,
                a2,
                andr(hp, b1, go(a, a1, b1, rev, avoid), b2, go(b, a2, b2, rev, avoid)),
            )
        if k == "or":
            a, b = tag[1], tag[2]
            c1, c2 = fresh(False), fresh(False)
            d1, d2 = fresh(True), fresh(True)
            d3, d4 = fresh(True), fresh(True)
            return andr(
                hn,
                c1,
                andl(hp, d1, d2, go(a, c1, d1, rev, avoid)),
                c2,
                andl(hp, d3, d4, go(b, c2, d4, rev, avoid)),
            )
        if k == "imp":
            a, b = tag[1], tag[2]
            u = fresh(False)
            v = fresh(True)
            w1 = fresh(True)
            w2 = fresh(False)
            return andl(
                hp,
                u,
                v,
                andr(hn, w1, go(a, u, w1, not rev, avoid), w2, go(b, w2, v, rev, avoid)),
            )
        if k == "not":
            a = tag[1]
            u = fresh(False)
            w = fresh(True)
            return negr(hp, u, negl(hn, w, go(a, u, w, not rev, avoid)))
        if k == "all" or k == "ex":
            lam = tag[1]
            if type(lam) is not Abs:
                raise UnsupportedShape(f"quantifier payload {lam} is not a lambda")
            y = fresh_variant(lam.var, avoid | body.free_vars)
            inst = subst_apply(lam.body, {lam.var: y})
            if k == "all":
                u = fresh(True)
                w = fresh(False)
                return allr(
                    hp, y, u, alll(hn, y, w, go(inst, w, u, rev, avoid | {y}))
                )
            u = fresh(False)
            w = fresh(True)
            return allr(
                hn, y, u, alll(hp, y, w, go(inst, u, w, rev, avoid | {y}))
            )
        raise UnsupportedShape(f"cannot decompose context body {body}")

    return go(c.body, h2, h3, reverse, set(avoid_vars))


def _rebuild(p: Proof, kids) -> Proof:
    t = type(p)
    if t is Cut:
        return cut(p.formula, p.h1, kids[0], p.h2, kids[1])
    if t is NegL:
        return negl(p.main, p.aux, kids[0])
    if t is NegR:
        return negr(p.main, p.aux, kids[0])
    if t is AndL:
        return andl(p.main, p.aux1, p.aux2, kids[0])
    if t is AndR:
        return andr(p.main, p.aux1, kids[0], p.aux2, kids[1])
    if t is AllL:
        return alll(p.main, p.instance, p.aux, kids[0])
    if t is AllR:
        return allr(p.main, p.eigen, p.aux, kids[0])
    if t is Eql:
        return eql(p.eq_hyp, p.main, p.left_to_right, p.context, p.aux, kids[0])
    return ind(
        p.main,
        p.motive,
        p.target,
        p.base_aux,
        kids[0],
        p.eigen,
        p.step_hyp,
        p.step_concl,
        kids[1],
    )


def atomize_eqls(p: Proof, ctx: dict) -> Proof:
    """Replace every equality step with a compound context by a cut
    against its simulation; atomic equality steps are kept. Vacuous
    compound contexts (no hole occurrence) drop the step entirely.

    The input must check in ctx; the result checks in the same ctx and
    may contain new cuts on compound formulas, which a subsequent full
    normalization removes."""
    nctx = {h: beta_normalize(f) for h, f in ctx.items()}
    mask = [p.fh | hyp_mask(nctx)]

    def fresh(pos: bool) -> int:
        h = fresh_from_mask(mask[0], pos)
        mask[0] |= hbit(h)
        return h

    _MISSING = object()

    def go(q: Proof) -> Proof:
        t = type(q)
        if t is Ax or t is TopR or t is Rfl:
            return q
        entries = child_entries(q, nctx)
        kids = []
        changed = False
        for child, add in entries:
            saved = [(h, nctx.get(h, _MISSING)) for h in add]
            nctx.update(add)
            try:
                c2 = go(child)
            finally:
                for h, old in saved:
                    if old is _MISSING:
                        nctx.pop(h, None)
                    else:
                        nctx[h] = old
            kids.append(c2)
            if c2 is not child:
                changed = True
        if t is not Eql:
            return _rebuild(q, kids) if changed else q
        sub = kids[0]
        c = _as_abs(q.context)
        body = c.body
        if is_atom(body):
            return _rebuild(q, kids) if changed else q
        if c.var not in body.free_vars:
            return rename_hyp(sub, q.aux, q.main)
        dom = c.ty.dom
        if dom is o or type(dom) is Arrow:
            raise PredicateEquation(f"equation sides have type {dom}")
        tag = split(nctx[q.eq_hyp])
        lhs, rhs = tag[1], tag[2]
        tgt = rhs if q.left_to_right else lhs
        phi_tgt = beta_normalize(app(c, tgt))
        avoid = set()
        for f in nctx.values():
            avoid |= f.free_vars
        avoid |= c.free_vars | lhs.free_vars | rhs.free_vars
        mask[0] |= sub.fh | q.fh
        if q.main > 0:
            h5 = fresh(False)
            sim = sim_eq(
                c, q.eq_hyp, h5, q.main, q.left_to_right, avoid, mask[0]
            )
            mask[0] |= sim.fh
            return cut(phi_tgt, q.aux, sub, h5, sim)
        h5 = fresh(True)
        sim = sim_eq(
            c, q.eq_hyp, q.main, h5, not q.left_to_right, avoid, mask[0]
        )
        mask[0] |= sim.fh
        return cut(phi_tgt, h5, sim, q.aux, sub)

    return run_deep(go, p)
