"""Bidirectional context checking for proof terms.

A context maps hypothesis names to formulas; check(p, ctx) confirms
that p proves the sequent ctx reads off (negative entries antecedent,
positive succedent). Rules are mix-style: every premise keeps the
conclusion's entries and only gains the bound auxiliary ones, so
weakening and contraction stay implicit.

The optional substitution maps free expression variables to terms and
is applied to every formula, both context entries and node-carried
expressions. Eigenvariables that collide with it are renamed on the
fly; a genuine freshness violation still raises.

Formulas are compared up to alpha and beta: everything is normalized
once on the way in and compared by canonical-form identity.
"""
from __future__ import annotations

from collections import Counter

from .terms import (
    Arrow,
    Expr,
    Var,
    alpha_canon,
    app,
    beta_normalize,
    fresh_variant,
    nat,
    o,
    subst_apply,
)
from .formulas import split, suc, zero
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
)
from .deepstack import run_deep


class ProofTypeError(Exception):
    pass


class UnknownHypothesis(ProofTypeError):
    pass


class PolarityMismatch(ProofTypeError):
    pass


class FormulaMismatch(ProofTypeError):
    pass


class CutFormulaMismatch(ProofTypeError):
    pass


class EigenvariableViolation(ProofTypeError):
    pass


class EquationShapeMismatch(ProofTypeError):
    pass


class IndTargetMismatch(ProofTypeError):
    pass


_MISSING = object()


def _same(a: Expr, b: Expr) -> bool:
    return a is b or alpha_canon(a) is alpha_canon(b)


def _nm(p: Proof) -> str:
    return type(p).__name__


def check(p: Proof, ctx: dict, subst: dict | None = None) -> None:
    """Raise a ProofTypeError unless p proves the sequent of ctx.

    ctx: {hyp: formula of type o}. subst: {Var: Expr}, type-preserving.
    """
    sub = dict(subst) if subst else {}
    for v, t in sub.items():
        if t.ty is not v.ty:
            raise FormulaMismatch(
                f"substitution maps {v.name} : {v.ty} to a term of type {t.ty}"
            )
    nctx = {}
    for h, f in ctx.items():
        if h == 0:
            raise PolarityMismatch("hypothesis 0 is not a valid name")
        if f.ty is not o:
            raise FormulaMismatch(f"context entry {h} has type {f.ty}, not o")
        nctx[h] = beta_normalize(subst_apply(f, sub) if sub else f)
    run_deep(_check, p, nctx, sub)


def _sub_bn(e: Expr, sub: dict) -> Expr:
    return beta_normalize(subst_apply(e, sub) if sub else e)


def _get(nctx: dict, h: int, p: Proof) -> Expr:
    if h == 0:
        raise PolarityMismatch(f"{_nm(p)} names hypothesis 0")
    f = nctx.get(h)
    if f is None:
        raise UnknownHypothesis(f"{_nm(p)} uses hypothesis {h} not in context")
    return f


def _check1(sub_proof: Proof, nctx: dict, sub: dict, h: int, f: Expr) -> None:
    old = nctx.get(h, _MISSING)
    nctx[h] = f
    try:
        _check(sub_proof, nctx, sub)
    finally:
        if old is _MISSING:
            del nctx[h]
        else:
            nctx[h] = old


def _check2(
    sub_proof: Proof, nctx: dict, sub: dict, h1: int, f1: Expr, h2: int, f2: Expr
) -> None:
    old1 = nctx.get(h1, _MISSING)
    nctx[h1] = f1
    old2 = nctx.get(h2, _MISSING)
    nctx[h2] = f2
    try:
        _check(sub_proof, nctx, sub)
    finally:
        if old2 is _MISSING:
            del nctx[h2]
        else:
            nctx[h2] = old2
        if old1 is _MISSING:
            del nctx[h1]
        else:
            nctx[h1] = old1


def _eigen_setup(y: Var, nctx: dict, sub: dict, p: Proof):
    """Effective eigenvariable and inner substitution for a binder y.

    Renames y when the ambient substitution mentions it; afterwards the
    freshness condition against the context is a real error if violated.
    """
    if y in sub or any(y in t.free_vars for t in sub.values()):
        avoid = set(sub)
        for t in sub.values():
            avoid |= t.free_vars
        for f in nctx.values():
            avoid |= f.free_vars
        y_eff = fresh_variant(y, avoid)
        sub2 = dict(sub)
        sub2[y] = y_eff
        return y_eff, sub2
    for f in nctx.values():
        if y in f.free_vars:
            raise EigenvariableViolation(
                f"{_nm(p)} eigenvariable {y.name} occurs free in the context"
            )
    return y, sub


def _check(p: Proof, nctx: dict, sub: dict) -> None:
    t = type(p)
    if t is Ax:
        if p.h1 >= 0:
            raise PolarityMismatch(f"Ax left name {p.h1} must be negative")
        if p.h2 <= 0:
            raise PolarityMismatch(f"Ax right name {p.h2} must be positive")
        f1 = _get(nctx, p.h1, p)
        f2 = _get(nctx, p.h2, p)
        if not _same(f1, f2):
            raise FormulaMismatch(
                f"Ax hypotheses {p.h1} and {p.h2} carry different formulas"
            )
        return

    if t is TopR:
        f = _get(nctx, p.h, p)
        tag = split(f)
        want = "top" if p.h > 0 else "bot"
        if tag[0] != want:
            raise FormulaMismatch(f"TopR at {p.h} expects {want}, found {f}")
        return

    if t is Rfl:
        if p.h <= 0:
            raise PolarityMismatch(f"Rfl name {p.h} must be positive")
        f = _get(nctx, p.h, p)
        tag = split(f)
        if tag[0] != "eq":
            raise EquationShapeMismatch(f"Rfl at {p.h} expects an equation, found {f}")
        if not _same(tag[1], tag[2]):
            raise FormulaMismatch(f"Rfl at {p.h}: sides of {f} differ")
        return

    if t is Cut:
        if p.h1 <= 0:
            raise PolarityMismatch(f"Cut first name {p.h1} must be positive")
        if p.h2 >= 0:
            raise PolarityMismatch(f"Cut second name {p.h2} must be negative")
        if p.formula.ty is not o:
            raise CutFormulaMismatch(
                f"cut formula has type {p.formula.ty}, not o"
            )
        f = _sub_bn(p.formula, sub)
        _check1(p.left, nctx, sub, p.h1, f)
        _check1(p.right, nctx, sub, p.h2, f)
        return

    if t is NegL or t is NegR:
        f = _get(nctx, p.main, p)
        tag = split(f)
        if tag[0] != "not":
            raise FormulaMismatch(f"{_nm(p)} at {p.main} expects a negation, found {f}")
        if t is NegL:
            if p.main >= 0:
                raise PolarityMismatch(f"NegL main {p.main} must be negative")
            if p.aux <= 0:
                raise PolarityMismatch(f"NegL aux {p.aux} must be positive")
        else:
            if p.main <= 0:
                raise PolarityMismatch(f"NegR main {p.main} must be positive")
            if p.aux >= 0:
                raise PolarityMismatch(f"NegR aux {p.aux} must be negative")
        _check1(p.sub, nctx, sub, p.aux, tag[1])
        return

    if t is AndL:
        f = _get(nctx, p.main, p)
        tag = split(f)
        k = tag[0]
        if p.main < 0:
            if k != "and":
                raise FormulaMismatch(
                    f"AndL at negative {p.main} expects a conjunction, found {f}"
                )
            s1, s2 = -1, -1
        elif k == "or":
            s1, s2 = 1, 1
        elif k == "imp":
            s1, s2 = -1, 1
        else:
            raise FormulaMismatch(
                f"AndL at positive {p.main} expects a disjunction or implication, found {f}"
            )
        if p.aux1 * s1 <= 0:
            raise PolarityMismatch(f"AndL aux1 {p.aux1} has the wrong sign for {f}")
        if p.aux2 * s2 <= 0:
            raise PolarityMismatch(f"AndL aux2 {p.aux2} has the wrong sign for {f}")
        _check2(p.sub, nctx, sub, p.aux1, tag[1], p.aux2, tag[2])
        return

    if t is AndR:
        f = _get(nctx, p.main, p)
        tag = split(f)
        k = tag[0]
        if p.main > 0:
            if k != "and":
                raise FormulaMismatch(
                    f"AndR at positive {p.main} expects a conjunction, found {f}"
                )
            s1, s2 = 1, 1
        elif k == "or":
            s1, s2 = -1, -1
        elif k == "imp":
            s1, s2 = 1, -1
        else:
            raise FormulaMismatch(
                f"AndR at negative {p.main} expects a disjunction or implication, found {f}"
            )
        if p.aux1 * s1 <= 0:
            raise PolarityMismatch(f"AndR aux1 {p.aux1} has the wrong sign for {f}")
        if p.aux2 * s2 <= 0:
            raise PolarityMismatch(f"AndR aux2 {p.aux2} has the wrong sign for {f}")
        _check1(p.left, nctx, sub, p.aux1, tag[1])
        _check1(p.right, nctx, sub, p.aux2, tag[2])
        return

    if t is AllL:
        f = _get(nctx, p.main, p)
        tag = split(f)
        want = "all" if p.main < 0 else "ex"
        if tag[0] != want:
            raise FormulaMismatch(
                f"AllL at {p.main} expects {want}-formula, found {f}"
            )
        if p.aux * p.main <= 0:
            raise PolarityMismatch(
                f"AllL aux {p.aux} must have the sign of main {p.main}"
            )
        lam = tag[1]
        inst = subst_apply(p.instance, sub) if sub else p.instance
        if inst.ty is not lam.ty.dom:
            raise FormulaMismatch(
                f"AllL instance {inst} : {inst.ty} does not inhabit {lam.ty.dom}"
            )
        _check1(p.sub, nctx, sub, p.aux, beta_normalize(app(lam, inst)))
        return

    if t is AllR:
        f = _get(nctx, p.main, p)
        tag = split(f)
        want = "all" if p.main > 0 else "ex"
        if tag[0] != want:
            raise FormulaMismatch(
                f"AllR at {p.main} expects {want}-formula, found {f}"
            )
        if p.aux * p.main <= 0:
            raise PolarityMismatch(
                f"AllR aux {p.aux} must have the sign of main {p.main}"
            )
        lam = tag[1]
        y = p.eigen
        if y.ty is not lam.ty.dom:
            raise FormulaMismatch(
                f"AllR eigenvariable {y.name} : {y.ty} does not inhabit {lam.ty.dom}"
            )
        y_eff, sub2 = _eigen_setup(y, nctx, sub, p)
        _check1(p.sub, nctx, sub2, p.aux, beta_normalize(app(lam, y_eff)))
        return

    if t is Eql:
        if p.eq_hyp >= 0:
            raise PolarityMismatch(f"Eql equation name {p.eq_hyp} must be negative")
        fe = _get(nctx, p.eq_hyp, p)
        tag = split(fe)
        if tag[0] != "eq":
            raise EquationShapeMismatch(
                f"Eql at {p.eq_hyp} expects an equation, found {fe}"
            )
        lhs, rhs = tag[1], tag[2]
        if p.main * p.aux <= 0 or p.main == 0:
            raise PolarityMismatch(
                f"Eql aux {p.aux} must have the sign of main {p.main}"
            )
        ctx_fn = subst_apply(p.context, sub) if sub else p.context
        cty = ctx_fn.ty
        if not (type(cty) is Arrow and cty.cod is o and cty.dom is lhs.ty):
            raise FormulaMismatch(
                f"Eql context has type {cty}, expected {lhs.ty} -> o"
            )
        src, tgt = (lhs, rhs) if p.left_to_right else (rhs, lhs)
        fm = _get(nctx, p.main, p)
        if not _same(fm, beta_normalize(app(ctx_fn, src))):
            raise FormulaMismatch(
                f"Eql main {p.main} does not match the context applied to {src}"
            )
        _check1(p.sub, nctx, sub, p.aux, beta_normalize(app(ctx_fn, tgt)))
        return

    # Ind
    if p.main <= 0:
        raise PolarityMismatch(f"Ind main {p.main} must be positive")
    motive = subst_apply(p.motive, sub) if sub else p.motive
    mty = motive.ty
    if not (type(mty) is Arrow and mty.dom is nat and mty.cod is o):
        raise FormulaMismatch(f"Ind motive has type {mty}, expected nat -> o")
    target = subst_apply(p.target, sub) if sub else p.target
    if target.ty is not nat:
        raise IndTargetMismatch(
            f"Ind target {target} has type {target.ty}, expected nat"
        )
    fm = _get(nctx, p.main, p)
    if not _same(fm, beta_normalize(app(motive, target))):
        raise FormulaMismatch(
            f"Ind main {p.main} does not match the motive applied to {target}"
        )
    if p.base_aux <= 0:
        raise PolarityMismatch(f"Ind base name {p.base_aux} must be positive")
    _check1(p.base, nctx, sub, p.base_aux, beta_normalize(app(motive, zero)))
    y = p.eigen
    if y.ty is not nat:
        raise FormulaMismatch(f"Ind eigenvariable {y.name} must have type nat")
    if p.step_hyp >= 0:
        raise PolarityMismatch(f"Ind step hypothesis {p.step_hyp} must be negative")
    if p.step_concl <= 0:
        raise PolarityMismatch(f"Ind step conclusion {p.step_concl} must be positive")
    y_eff, sub2 = _eigen_setup(y, nctx, sub, p)
    _check2(
        p.step,
        nctx,
        sub2,
        p.step_hyp,
        beta_normalize(app(motive, y_eff)),
        p.step_concl,
        beta_normalize(app(motive, suc(y_eff))),
    )


# ---------------------------------------------------------------- sequents


class Sequent:
    """Multisets of formulas keyed by canonical form."""

    __slots__ = ("ant", "suc")

    def __init__(self, ant, suc):
        self.ant = Counter(alpha_canon(beta_normalize(f)) for f in ant)
        self.suc = Counter(alpha_canon(beta_normalize(f)) for f in suc)

    def __eq__(self, other):
        if not isinstance(other, Sequent):
            return NotImplemented
        return self.ant == other.ant and self.suc == other.suc

    def __repr__(self):
        lhs = ", ".join(str(f) for f in self.ant.elements())
        rhs = ", ".join(str(f) for f in self.suc.elements())
        return f"{lhs} |- {rhs}"


def end_sequent(ctx: dict, subst: dict | None = None) -> Sequent:
    sub = subst or {}
    ant = []
    suc_ = []
    for h, f in ctx.items():
        g = beta_normalize(subst_apply(f, sub) if sub else f)
        (ant if h < 0 else suc_).append(g)
    return Sequent(ant, suc_)


# ----------------------------------------------------- context threading


def child_entries(p: Proof, nctx: dict) -> list:
    """For a checked, substitution-free proof node: the children together
    with the context entries each one binds. Returns [(child, {hyp: formula})]
    in premise order. Formulas are beta-normal when nctx is."""
    t = type(p)
    if t is Ax or t is TopR or t is Rfl:
        return []
    if t is Cut:
        f = beta_normalize(p.formula)
        return [(p.left, {p.h1: f}), (p.right, {p.h2: f})]
    if t is NegL or t is NegR:
        tag = split(nctx[p.main])
        return [(p.sub, {p.aux: tag[1]})]
    if t is AndL:
        tag = split(nctx[p.main])
        return [(p.sub, {p.aux1: tag[1], p.aux2: tag[2]})]
    if t is AndR:
        tag = split(nctx[p.main])
        return [(p.left, {p.aux1: tag[1]}), (p.right, {p.aux2: tag[2]})]
    if t is AllL:
        tag = split(nctx[p.main])
        return [(p.sub, {p.aux: beta_normalize(app(tag[1], p.instance))})]
    if t is AllR:
        tag = split(nctx[p.main])
        return [(p.sub, {p.aux: beta_normalize(app(tag[1], p.eigen))})]
    if t is Eql:
        tag = split(nctx[p.eq_hyp])
        tgt = tag[2] if p.left_to_right else tag[1]
        return [(p.sub, {p.aux: beta_normalize(app(p.context, tgt))})]
    m = p.motive
    return [
        (p.base, {p.base_aux: beta_normalize(app(m, zero))}),
        (
            p.step,
            {
                p.step_hyp: beta_normalize(app(m, p.eigen)),
                p.step_concl: beta_normalize(app(m, suc(p.eigen))),
            },
        ),
    ]
