"""Big-step cut normalization.

The evaluator is three mutually recursive operators: _N normalizes a
term, _E evaluates a cut whose operands are already normal, and _S
pushes such a cut into one operand. No reducible cut is ever built:
results are assembled with the skip constructors and re-entry into _E,
so the output is normal by construction.

Clause order in _E is significant and fixed:

  1. policy stop (until-atomic / until-qfree), which keeps the cut;
  2. weakening, when an operand ignores its bound name;
  3. axiom splicing;
  4. one logical clause per connective when both operands introduce
     the cut formula at the bound names;
  5. pushing into the left operand, then the right;
  6. a stuck cut node (equation or induction introductions, or a
     policy survivor) when nothing applies.

Contraction is the reason for the priming calls: an operand's subterm
may use the cut name again, so the other operand is cut back in before
the subterms are recombined.

Every _N/_E/_S call spends one step of the budget; exhaustion raises
instead of returning a partial term.
"""
from __future__ import annotations

import enum

from .terms import app, beta_normalize
from .formulas import is_atom, quantifier_free, split
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
    cut,
    eql,
    fresh_from_mask,
    hbit,
    ind,
    is_main_at,
    negl,
    negr,
    proof_subst,
    rename_hyp,
    skip_alll,
    skip_allr,
    skip_andl,
    skip_andr,
    skip_cut,
    skip_eql,
    skip_ind,
    skip_negl,
    skip_negr,
)
from .terms import fresh_variant
from .deepstack import run_deep


class Policy(enum.Enum):
    FULL = "full"
    UNTIL_ATOMIC = "until-atomic"
    UNTIL_QFREE = "until-qfree"


DEFAULT_BUDGET = 10**8


class BudgetExhausted(Exception):
    def __init__(self, steps: int):
        super().__init__(f"normalization budget of {steps} steps exhausted")
        self.steps = steps


class _Budget:
    __slots__ = ("left", "initial")

    def __init__(self, n: int):
        self.left = n
        self.initial = n


def normalize(
    p: Proof, policy: Policy = Policy.FULL, budget: int = DEFAULT_BUDGET
) -> Proof:
    """Normal form of p under the given cut policy."""
    return run_deep(_N, p, policy, _Budget(budget))


def _spend(b: _Budget) -> None:
    b.left -= 1
    if b.left < 0:
        raise BudgetExhausted(b.initial)


def _N(p: Proof, pol: Policy, b: _Budget) -> Proof:
    _spend(b)
    t = type(p)
    if t is Ax or t is TopR or t is Rfl:
        return p
    if t is Cut:
        return _E(
            p.formula,
            p.h1,
            _N(p.left, pol, b),
            p.h2,
            _N(p.right, pol, b),
            pol,
            b,
        )
    if t is NegL or t is NegR:
        s = _N(p.sub, pol, b)
        if not s.fh & hbit(p.aux):
            return s
        if s is p.sub:
            return p
        return (negl if t is NegL else negr)(p.main, p.aux, s)
    if t is AndL:
        s = _N(p.sub, pol, b)
        if not s.fh & (hbit(p.aux1) | hbit(p.aux2)):
            return s
        if s is p.sub:
            return p
        return andl(p.main, p.aux1, p.aux2, s)
    if t is AndR:
        l = _N(p.left, pol, b)
        if not l.fh & hbit(p.aux1):
            return l
        r = _N(p.right, pol, b)
        if not r.fh & hbit(p.aux2):
            return r
        if l is p.left and r is p.right:
            return p
        return andr(p.main, p.aux1, l, p.aux2, r)
    if t is AllL:
        s = _N(p.sub, pol, b)
        if not s.fh & hbit(p.aux):
            return s
        if s is p.sub:
            return p
        return alll(p.main, p.instance, p.aux, s)
    if t is AllR:
        s = _N(p.sub, pol, b)
        if not s.fh & hbit(p.aux) and p.eigen not in s.fv:
            return s
        if s is p.sub:
            return p
        return allr(p.main, p.eigen, p.aux, s)
    if t is Eql:
        s = _N(p.sub, pol, b)
        if not s.fh & hbit(p.aux):
            return s
        if s is p.sub:
            return p
        return eql(p.eq_hyp, p.main, p.left_to_right, p.context, p.aux, s)
    # Ind
    base = _N(p.base, pol, b)
    if not base.fh & hbit(p.base_aux):
        return base
    step = _N(p.step, pol, b)
    if (
        not step.fh & (hbit(p.step_hyp) | hbit(p.step_concl))
        and p.eigen not in step.fv
    ):
        return step
    if base is p.base and step is p.step:
        return p
    return ind(
        p.main,
        p.motive,
        p.target,
        p.base_aux,
        base,
        p.eigen,
        p.step_hyp,
        p.step_concl,
        step,
    )


def _fb(name: int, s: Proof, U: int):
    """Refresh a bound name that collides with the free set U."""
    if U & hbit(name):
        nb = fresh_from_mask(U | s.fh, name > 0)
        return nb, rename_hyp(s, name, nb)
    return name, s


def _E(
    phi, h1: int, p1: Proof, h2: int, p2: Proof, pol: Policy, b: _Budget
) -> Proof:
    _spend(b)
    if pol is not Policy.FULL:
        if (
            is_atom(phi)
            if pol is Policy.UNTIL_ATOMIC
            else quantifier_free(phi)
        ):
            return skip_cut(phi, h1, p1, h2, p2)
    if not p1.fh & hbit(h1):
        return p1
    if not p2.fh & hbit(h2):
        return p2
    t1 = type(p1)
    if t1 is Ax:
        return rename_hyp(p2, h2, p1.h1)
    t2 = type(p2)
    if t2 is Ax:
        return rename_hyp(p1, h1, p2.h2)

    tag = split(phi)
    k = tag[0]

    if k == "not" and t1 is NegR and p1.main == h1 and t2 is NegL and p2.main == h2:
        A = tag[1]
        U = p1.fh | p2.fh
        a, s1 = _fb(p1.aux, p1.sub, U)
        U |= hbit(a)
        c, s2 = _fb(p2.aux, p2.sub, U)
        s1p = _S(s1, phi, h1, h2, p2, pol, b) if s1.fh & hbit(h1) else s1
        s2p = _S(s2, phi, h2, h1, p1, pol, b) if s2.fh & hbit(h2) else s2
        return _E(A, c, s2p, a, s1p, pol, b)

    if k == "and" and t1 is AndR and p1.main == h1 and t2 is AndL and p2.main == h2:
        A, B = tag[1], tag[2]
        U = p1.fh | p2.fh
        a1, l = _fb(p1.aux1, p1.left, U)
        U |= hbit(a1)
        a2, r = _fb(p1.aux2, p1.right, U)
        U |= hbit(a2)
        c1, s3 = _fb(p2.aux1, p2.sub, U)
        U |= hbit(c1)
        c2, s3 = _fb(p2.aux2, s3, U)
        lp = _S(l, phi, h1, h2, p2, pol, b) if l.fh & hbit(h1) else l
        rp = _S(r, phi, h1, h2, p2, pol, b) if r.fh & hbit(h1) else r
        s3p = _S(s3, phi, h2, h1, p1, pol, b) if s3.fh & hbit(h2) else s3
        inner = _S(s3p, A, c1, a1, lp, pol, b)
        return _E(B, a2, rp, c2, inner, pol, b)

    if (
        (k == "or" or k == "imp")
        and t1 is AndL
        and p1.main == h1
        and t2 is AndR
        and p2.main == h2
    ):
        A, B = tag[1], tag[2]
        U = p1.fh | p2.fh
        a1, s1 = _fb(p1.aux1, p1.sub, U)
        U |= hbit(a1)
        a2, s1 = _fb(p1.aux2, s1, U)
        U |= hbit(a2)
        c1, u1 = _fb(p2.aux1, p2.left, U)
        U |= hbit(c1)
        c2, u2 = _fb(p2.aux2, p2.right, U)
        s1p = _S(s1, phi, h1, h2, p2, pol, b) if s1.fh & hbit(h1) else s1
        u1p = _S(u1, phi, h2, h1, p1, pol, b) if u1.fh & hbit(h2) else u1
        u2p = _S(u2, phi, h2, h1, p1, pol, b) if u2.fh & hbit(h2) else u2
        inner = _S(s1p, A, a1, c1, u1p, pol, b)
        return _E(B, a2, inner, c2, u2p, pol, b)

    if k == "all" and t1 is AllR and p1.main == h1 and t2 is AllL and p2.main == h2:
        t = p2.instance
        inst = beta_normalize(app(tag[1], t))
        U = p1.fh | p2.fh
        a, s1 = _fb(p1.aux, p1.sub, U)
        U |= hbit(a)
        c, s2 = _fb(p2.aux, p2.sub, U)
        s1t = proof_subst(s1, {p1.eigen: t})
        s1p = _S(s1t, phi, h1, h2, p2, pol, b) if s1t.fh & hbit(h1) else s1t
        s2p = _S(s2, phi, h2, h1, p1, pol, b) if s2.fh & hbit(h2) else s2
        return _E(inst, a, s1p, c, s2p, pol, b)

    if k == "ex" and t1 is AllL and p1.main == h1 and t2 is AllR and p2.main == h2:
        t = p1.instance
        inst = beta_normalize(app(tag[1], t))
        U = p1.fh | p2.fh
        a, s1 = _fb(p1.aux, p1.sub, U)
        U |= hbit(a)
        c, s2 = _fb(p2.aux, p2.sub, U)
        s2t = proof_subst(s2, {p2.eigen: t})
        s1p = _S(s1, phi, h1, h2, p2, pol, b) if s1.fh & hbit(h1) else s1
        s2p = _S(s2t, phi, h2, h1, p1, pol, b) if s2t.fh & hbit(h2) else s2t
        return _E(inst, a, s1p, c, s2p, pol, b)

    if not is_main_at(p1, h1):
        return _S(p1, phi, h1, h2, p2, pol, b)
    if not is_main_at(p2, h2):
        return _S(p2, phi, h2, h1, p1, pol, b)
    return cut(phi, h1, p1, h2, p2)


def _S(p: Proof, phi, h: int, hb: int, q: Proof, pol: Policy, b: _Budget) -> Proof:
    _spend(b)
    if not p.fh & hbit(h):
        return p
    t = type(p)
    if t is Ax:
        other = p.h2 if h < 0 else p.h1
        return rename_hyp(q, hb, other)
    if is_main_at(p, h):
        if h > 0:
            return _E(phi, h, p, hb, q, pol, b)
        return _E(phi, hb, q, h, p, pol, b)

    qfh = q.fh
    qfv = q.fv

    def descend(binder: int, child: Proof):
        if binder == h or not child.fh & hbit(h):
            return binder, child
        if qfh & hbit(binder):
            nb = fresh_from_mask(child.fh | qfh | hbit(h), binder > 0)
            child = rename_hyp(child, binder, nb)
            binder = nb
        return binder, _S(child, phi, h, hb, q, pol, b)

    def fresh_eigen(y, child: Proof):
        if y in qfv or y in phi.free_vars:
            avoid = child.fv | qfv | phi.free_vars
            ny = fresh_variant(y, avoid)
            return ny, proof_subst(child, {y: ny})
        return y, child

    if t is Cut:
        k1, l = descend(p.h1, p.left)
        k2, r = descend(p.h2, p.right)
        return _E(p.formula, k1, l, k2, r, pol, b)
    if t is NegL or t is NegR:
        aux, s = descend(p.aux, p.sub)
        return (skip_negl if t is NegL else skip_negr)(p.main, aux, s)
    if t is AndL:
        a1, a2, s = p.aux1, p.aux2, p.sub
        if s.fh & hbit(h):
            if qfh & hbit(a1):
                nb = fresh_from_mask(s.fh | qfh | hbit(h) | hbit(a2), a1 > 0)
                s = rename_hyp(s, a1, nb)
                a1 = nb
            if qfh & hbit(a2):
                nb = fresh_from_mask(s.fh | qfh | hbit(h) | hbit(a1), a2 > 0)
                s = rename_hyp(s, a2, nb)
                a2 = nb
            s = _S(s, phi, h, hb, q, pol, b)
        return skip_andl(p.main, a1, a2, s)
    if t is AndR:
        a1, l = descend(p.aux1, p.left)
        a2, r = descend(p.aux2, p.right)
        return skip_andr(p.main, a1, l, a2, r)
    if t is AllL:
        aux, s = descend(p.aux, p.sub)
        return skip_alll(p.main, p.instance, aux, s)
    if t is AllR:
        y, s = p.eigen, p.sub
        if s.fh & hbit(h):
            y, s = fresh_eigen(y, s)
        aux, s = descend(p.aux, s)
        return skip_allr(p.main, y, aux, s)
    if t is Eql:
        aux, s = descend(p.aux, p.sub)
        return skip_eql(p.eq_hyp, p.main, p.left_to_right, p.context, aux, s)
    # Ind
    base_aux, base = descend(p.base_aux, p.base)
    y, step = p.eigen, p.step
    if step.fh & hbit(h):
        y, step = fresh_eigen(y, step)
    sh, sc, step2 = p.step_hyp, p.step_concl, step
    if step2.fh & hbit(h):
        if qfh & hbit(sh):
            nb = fresh_from_mask(step2.fh | qfh | hbit(h) | hbit(sc), sh > 0)
            step2 = rename_hyp(step2, sh, nb)
            sh = nb
        if qfh & hbit(sc):
            nb = fresh_from_mask(step2.fh | qfh | hbit(h) | hbit(sh), sc > 0)
            step2 = rename_hyp(step2, sc, nb)
            sc = nb
        step2 = _S(step2, phi, h, hb, q, pol, b)
    return skip_ind(
        p.main, p.motive, p.target, base_aux, base, y, sh, sc, step2
    )


# ------------------------------------------------------- normality audit


def _policy_stops(pol: Policy, phi) -> bool:
    if pol is Policy.UNTIL_ATOMIC:
        return is_atom(phi)
    if pol is Policy.UNTIL_QFREE:
        return quantifier_free(phi)
    return False


def _principal_redex(phi, h1, p1, h2, p2) -> bool:
    k = split(phi)[0]
    t1, t2 = type(p1), type(p2)
    if k == "not":
        return t1 is NegR and p1.main == h1 and t2 is NegL and p2.main == h2
    if k == "and":
        return t1 is AndR and p1.main == h1 and t2 is AndL and p2.main == h2
    if k == "or" or k == "imp":
        return t1 is AndL and p1.main == h1 and t2 is AndR and p2.main == h2
    if k == "all":
        return t1 is AllR and p1.main == h1 and t2 is AllL and p2.main == h2
    if k == "ex":
        return t1 is AllL and p1.main == h1 and t2 is AllR and p2.main == h2
    return False


def normal_violations(p: Proof, policy: Policy = Policy.FULL) -> list:
    """Reasons p is not a normal form under the policy; empty if normal."""
    out = []
    stack = [p]
    while stack:
        q = stack.pop()
        t = type(q)
        if t is Ax or t is TopR or t is Rfl:
            continue
        if t is Cut:
            stack.append(q.left)
            stack.append(q.right)
            if not q.left.fh & hbit(q.h1):
                out.append(("weakening-left", q))
            elif not q.right.fh & hbit(q.h2):
                out.append(("weakening-right", q))
            elif _policy_stops(policy, q.formula):
                pass
            elif type(q.left) is Ax:
                out.append(("axiom-left", q))
            elif type(q.right) is Ax:
                out.append(("axiom-right", q))
            elif not is_main_at(q.left, q.h1):
                out.append(("rank-left", q))
            elif not is_main_at(q.right, q.h2):
                out.append(("rank-right", q))
            elif _principal_redex(q.formula, q.h1, q.left, q.h2, q.right):
                out.append(("principal", q))
            continue
        if t is NegL or t is NegR or t is AllL or t is Eql:
            stack.append(q.sub)
            if not q.sub.fh & hbit(q.aux):
                out.append(("vacuous-binder", q))
        elif t is AndL:
            stack.append(q.sub)
            if not q.sub.fh & (hbit(q.aux1) | hbit(q.aux2)):
                out.append(("vacuous-binder", q))
        elif t is AndR:
            stack.append(q.left)
            stack.append(q.right)
            if not q.left.fh & hbit(q.aux1):
                out.append(("vacuous-binder-left", q))
            if not q.right.fh & hbit(q.aux2):
                out.append(("vacuous-binder-right", q))
        elif t is AllR:
            stack.append(q.sub)
            if not q.sub.fh & hbit(q.aux) and q.eigen not in q.sub.fv:
                out.append(("vacuous-binder", q))
        else:
            stack.append(q.base)
            stack.append(q.step)
            if not q.base.fh & hbit(q.base_aux):
                out.append(("vacuous-base", q))
            if (
                not q.step.fh & (hbit(q.step_hyp) | hbit(q.step_concl))
                and q.eigen not in q.step.fv
            ):
                out.append(("vacuous-step", q))
    return out


def is_normal(p: Proof, policy: Policy = Policy.FULL) -> bool:
    return not normal_violations(p, policy)


def stuck_cuts(p: Proof) -> list:
    """Cut nodes that survive full normalization: both operands introduce
    the cut formula at the bound names but no logical clause applies."""
    out = []
    stack = [p]
    while stack:
        q = stack.pop()
        t = type(q)
        if t is Cut:
            out.append(q)
            stack.append(q.left)
            stack.append(q.right)
        elif t is AndR:
            stack.append(q.left)
            stack.append(q.right)
        elif t is Ind:
            stack.append(q.base)
            stack.append(q.step)
        elif t is not Ax and t is not TopR and t is not Rfl:
            stack.append(q.sub)
    return out
