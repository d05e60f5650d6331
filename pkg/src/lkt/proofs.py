"""Proof terms with implicit weakening and contraction.

Hypotheses are nonzero ints: negative names an antecedent entry,
positive a succedent entry. Binders shadow, so the same name may be
rebound below. Every node caches

  fh   free hypotheses as a bitmask (hyp h occupies bit 2|h| when
       h > 0 and bit 2|h|-1 when h < 0, so bit_length()//2 is the
       largest absolute value in use),
  fv   free expression variables (frozenset of Var),
  size node count,
  hsh  structural hash.

Builders are unchecked: polarity and formula discipline live in the
checker. The skip_* builders additionally drop a node whose bound
hypotheses (and eigenvariable, where there is one) are unused, which
is the weakening behavior the evaluator relies on.
"""
from __future__ import annotations

from typing import Iterable

from .terms import Expr, Var, fresh_variant, beta_normalize, subst_apply

_EMPTY: frozenset = frozenset()


def hbit(h: int) -> int:
    return 1 << ((h << 1) if h > 0 else (-1 - (h << 1)))


def hyp_mask(hs: Iterable[int]) -> int:
    m = 0
    for h in hs:
        m |= hbit(h)
    return m


def hyps_of_mask(m: int) -> list:
    """Decode a bitmask back to a sorted hypothesis list."""
    out = []
    bit = 1
    while bit <= m:
        if m & bit:
            idx = bit.bit_length() - 1
            out.append(idx // 2 if idx % 2 == 0 else -((idx + 1) // 2))
        bit <<= 1
    return sorted(out)


def fresh_hyp(positive: bool, avoid: Iterable[int]) -> int:
    a = hyp_mask(avoid).bit_length() // 2 + 1
    return a if positive else -a


def fresh_from_mask(mask: int, positive: bool) -> int:
    a = mask.bit_length() // 2 + 1
    return a if positive else -a


# ---------------------------------------------------------------- nodes


class Proof:
    __slots__ = ("fh", "fv", "size", "hsh")

    def __hash__(self) -> int:
        return self.hsh

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Proof):
            return NotImplemented
        return proof_eq(self, other)

    def __repr__(self) -> str:
        return _pstr(self, 6)


class Ax(Proof):
    __slots__ = ("h1", "h2")


class TopR(Proof):
    __slots__ = ("h",)


class Rfl(Proof):
    __slots__ = ("h",)


class Cut(Proof):
    __slots__ = ("formula", "h1", "left", "h2", "right")


class NegL(Proof):
    __slots__ = ("main", "aux", "sub")


class NegR(Proof):
    __slots__ = ("main", "aux", "sub")


class AndL(Proof):
    __slots__ = ("main", "aux1", "aux2", "sub")


class AndR(Proof):
    __slots__ = ("main", "aux1", "left", "aux2", "right")


class AllL(Proof):
    __slots__ = ("main", "instance", "aux", "sub")


class AllR(Proof):
    __slots__ = ("main", "eigen", "aux", "sub")


class Eql(Proof):
    __slots__ = ("eq_hyp", "main", "left_to_right", "context", "aux", "sub")


class Ind(Proof):
    __slots__ = (
        "main",
        "motive",
        "target",
        "base_aux",
        "base",
        "eigen",
        "step_hyp",
        "step_concl",
        "step",
    )


# -------------------------------------------------------------- builders


def ax(h1: int, h2: int) -> Ax:
    p = Ax.__new__(Ax)
    p.h1 = h1
    p.h2 = h2
    p.fh = hbit(h1) | hbit(h2)
    p.fv = _EMPTY
    p.size = 1
    p.hsh = hash((0, h1, h2))
    return p


def topr(h: int) -> TopR:
    p = TopR.__new__(TopR)
    p.h = h
    p.fh = hbit(h)
    p.fv = _EMPTY
    p.size = 1
    p.hsh = hash((1, h))
    return p


def rfl(h: int) -> Rfl:
    p = Rfl.__new__(Rfl)
    p.h = h
    p.fh = hbit(h)
    p.fv = _EMPTY
    p.size = 1
    p.hsh = hash((2, h))
    return p


def cut(formula: Expr, h1: int, left: Proof, h2: int, right: Proof) -> Cut:
    p = Cut.__new__(Cut)
    p.formula = formula
    p.h1 = h1
    p.left = left
    p.h2 = h2
    p.right = right
    p.fh = (left.fh & ~hbit(h1)) | (right.fh & ~hbit(h2))
    p.fv = formula.free_vars | left.fv | right.fv
    p.size = 1 + left.size + right.size
    p.hsh = hash((3, hash(formula), h1, left.hsh, h2, right.hsh))
    return p


def negl(main: int, aux: int, sub: Proof) -> NegL:
    p = NegL.__new__(NegL)
    p.main = main
    p.aux = aux
    p.sub = sub
    p.fh = hbit(main) | (sub.fh & ~hbit(aux))
    p.fv = sub.fv
    p.size = 1 + sub.size
    p.hsh = hash((4, main, aux, sub.hsh))
    return p


def negr(main: int, aux: int, sub: Proof) -> NegR:
    p = NegR.__new__(NegR)
    p.main = main
    p.aux = aux
    p.sub = sub
    p.fh = hbit(main) | (sub.fh & ~hbit(aux))
    p.fv = sub.fv
    p.size = 1 + sub.size
    p.hsh = hash((5, main, aux, sub.hsh))
    return p


def andl(main: int, aux1: int, aux2: int, sub: Proof) -> AndL:
    p = AndL.__new__(AndL)
    p.main = main
    p.aux1 = aux1
    p.aux2 = aux2
    p.sub = sub
    p.fh = hbit(main) | (sub.fh & ~(hbit(aux1) | hbit(aux2)))
    p.fv = sub.fv
    p.size = 1 + sub.size
    p.hsh = hash((6, main, aux1, aux2, sub.hsh))
    return p


def andr(main: int, aux1: int, left: Proof, aux2: int, right: Proof) -> AndR:
    p = AndR.__new__(AndR)
    p.main = main
    p.aux1 = aux1
    p.left = left
    p.aux2 = aux2
    p.right = right
    p.fh = hbit(main) | (left.fh & ~hbit(aux1)) | (right.fh & ~hbit(aux2))
    p.fv = left.fv | right.fv
    p.size = 1 + left.size + right.size
    p.hsh = hash((7, main, aux1, left.hsh, aux2, right.hsh))
    return p


def alll(main: int, instance: Expr, aux: int, sub: Proof) -> AllL:
    p = AllL.__new__(AllL)
    p.main = main
    p.instance = instance
    p.aux = aux
    p.sub = sub
    p.fh = hbit(main) | (sub.fh & ~hbit(aux))
    p.fv = instance.free_vars | sub.fv
    p.size = 1 + sub.size
    p.hsh = hash((8, main, hash(instance), aux, sub.hsh))
    return p


def allr(main: int, eigen: Var, aux: int, sub: Proof) -> AllR:
    p = AllR.__new__(AllR)
    p.main = main
    p.eigen = eigen
    p.aux = aux
    p.sub = sub
    p.fh = hbit(main) | (sub.fh & ~hbit(aux))
    fv = sub.fv
    p.fv = fv - {eigen} if eigen in fv else fv
    p.size = 1 + sub.size
    p.hsh = hash((9, main, aux, sub.hsh))
    return p


def eql(
    eq_hyp: int,
    main: int,
    left_to_right: bool,
    context: Expr,
    aux: int,
    sub: Proof,
) -> Eql:
    p = Eql.__new__(Eql)
    p.eq_hyp = eq_hyp
    p.main = main
    p.left_to_right = left_to_right
    p.context = context
    p.aux = aux
    p.sub = sub
    p.fh = hbit(eq_hyp) | hbit(main) | (sub.fh & ~hbit(aux))
    p.fv = context.free_vars | sub.fv
    p.size = 1 + sub.size
    p.hsh = hash(
        (10, eq_hyp, main, left_to_right, hash(context), aux, sub.hsh)
    )
    return p


def ind(
    main: int,
    motive: Expr,
    target: Expr,
    base_aux: int,
    base: Proof,
    eigen: Var,
    step_hyp: int,
    step_concl: int,
    step: Proof,
) -> Ind:
    p = Ind.__new__(Ind)
    p.main = main
    p.motive = motive
    p.target = target
    p.base_aux = base_aux
    p.base = base
    p.eigen = eigen
    p.step_hyp = step_hyp
    p.step_concl = step_concl
    p.step = step
    p.fh = (
        hbit(main)
        | (base.fh & ~hbit(base_aux))
        | (step.fh & ~(hbit(step_hyp) | hbit(step_concl)))
    )
    sfv = step.fv
    if eigen in sfv:
        sfv = sfv - {eigen}
    p.fv = motive.free_vars | target.free_vars | base.fv | sfv
    p.size = 1 + base.size + step.size
    p.hsh = hash(
        (
            11,
            main,
            hash(motive),
            hash(target),
            base_aux,
            base.hsh,
            step_hyp,
            step_concl,
            step.hsh,
        )
    )
    return p


# --------------------------------------------------------- skip builders
# Each returns its subproof when the bound names are unused, performing
# the implicit weakening instead of building a vacuous node.


def skip_negl(main: int, aux: int, sub: Proof) -> Proof:
    if not sub.fh & hbit(aux):
        return sub
    return negl(main, aux, sub)


def skip_negr(main: int, aux: int, sub: Proof) -> Proof:
    if not sub.fh & hbit(aux):
        return sub
    return negr(main, aux, sub)


def skip_andl(main: int, aux1: int, aux2: int, sub: Proof) -> Proof:
    if not sub.fh & (hbit(aux1) | hbit(aux2)):
        return sub
    return andl(main, aux1, aux2, sub)


def skip_andr(main: int, aux1: int, left: Proof, aux2: int, right: Proof) -> Proof:
    if not left.fh & hbit(aux1):
        return left
    if not right.fh & hbit(aux2):
        return right
    return andr(main, aux1, left, aux2, right)


def skip_alll(main: int, instance: Expr, aux: int, sub: Proof) -> Proof:
    if not sub.fh & hbit(aux):
        return sub
    return alll(main, instance, aux, sub)


def skip_allr(main: int, eigen: Var, aux: int, sub: Proof) -> Proof:
    if not sub.fh & hbit(aux) and eigen not in sub.fv:
        return sub
    return allr(main, eigen, aux, sub)


def skip_eql(
    eq_hyp: int,
    main: int,
    left_to_right: bool,
    context: Expr,
    aux: int,
    sub: Proof,
) -> Proof:
    if not sub.fh & hbit(aux):
        return sub
    return eql(eq_hyp, main, left_to_right, context, aux, sub)


def skip_cut(formula: Expr, h1: int, left: Proof, h2: int, right: Proof) -> Proof:
    if not left.fh & hbit(h1):
        return left
    if not right.fh & hbit(h2):
        return right
    return cut(formula, h1, left, h2, right)


def skip_ind(
    main: int,
    motive: Expr,
    target: Expr,
    base_aux: int,
    base: Proof,
    eigen: Var,
    step_hyp: int,
    step_concl: int,
    step: Proof,
) -> Proof:
    if not base.fh & hbit(base_aux):
        return base
    if (
        not step.fh & (hbit(step_hyp) | hbit(step_concl))
        and eigen not in step.fv
    ):
        return step
    return ind(
        main, motive, target, base_aux, base, eigen, step_hyp, step_concl, step
    )


# ----------------------------------------------------------- main formula


def main_hyps(p: Proof) -> tuple:
    """Hypotheses at which p introduces its conclusion's main formula.

    Empty for Cut; both names for Ax; the equation and the rewritten
    entry for Eql.
    """
    t = type(p)
    if t is Ax:
        return (p.h1, p.h2)
    if t is Cut:
        return ()
    if t is TopR or t is Rfl:
        return (p.h,)
    if t is Eql:
        return (p.eq_hyp, p.main)
    return (p.main,)


def is_main_at(p: Proof, h: int) -> bool:
    t = type(p)
    if t is Ax:
        return p.h1 == h or p.h2 == h
    if t is Cut:
        return False
    if t is TopR or t is Rfl:
        return p.h == h
    if t is Eql:
        return p.eq_hyp == h or p.main == h
    return p.main == h


# --------------------------------------------------------------- renaming


def rename_hyp(p: Proof, old: int, new: int) -> Proof:
    """Replace free occurrences of hypothesis old by new.

    Capture-avoiding: a binder equal to new is renamed away first when
    old occurs free below it. old and new must have the same sign.
    """
    if old == new or not p.fh & hbit(old):
        return p
    return _ren(p, old, new)


def _ren_binder(binder: int, sub: Proof, old: int, new: int):
    """Rename under one binder; returns (binder', sub')."""
    if binder == old or not sub.fh & hbit(old):
        return binder, sub
    if binder == new:
        nb = fresh_from_mask(sub.fh | hbit(new) | hbit(old), binder > 0)
        sub = _ren(sub, binder, nb)
        binder = nb
    return binder, _ren(sub, old, new)


def _ren(p: Proof, old: int, new: int) -> Proof:
    t = type(p)
    if t is Ax:
        return ax(new if p.h1 == old else p.h1, new if p.h2 == old else p.h2)
    if t is TopR:
        return topr(new)
    if t is Rfl:
        return rfl(new)
    if t is Cut:
        h1, left = _ren_binder(p.h1, p.left, old, new)
        h2, right = _ren_binder(p.h2, p.right, old, new)
        return cut(p.formula, h1, left, h2, right)
    if t is NegL:
        aux, sub = _ren_binder(p.aux, p.sub, old, new)
        return negl(new if p.main == old else p.main, aux, sub)
    if t is NegR:
        aux, sub = _ren_binder(p.aux, p.sub, old, new)
        return negr(new if p.main == old else p.main, aux, sub)
    if t is AndL:
        aux1, aux2, sub = _ren_binder2(p.aux1, p.aux2, p.sub, old, new)
        return andl(new if p.main == old else p.main, aux1, aux2, sub)
    if t is AndR:
        aux1, left = _ren_binder(p.aux1, p.left, old, new)
        aux2, right = _ren_binder(p.aux2, p.right, old, new)
        return andr(new if p.main == old else p.main, aux1, left, aux2, right)
    if t is AllL:
        aux, sub = _ren_binder(p.aux, p.sub, old, new)
        return alll(new if p.main == old else p.main, p.instance, aux, sub)
    if t is AllR:
        aux, sub = _ren_binder(p.aux, p.sub, old, new)
        return allr(new if p.main == old else p.main, p.eigen, aux, sub)
    if t is Eql:
        aux, sub = _ren_binder(p.aux, p.sub, old, new)
        return eql(
            new if p.eq_hyp == old else p.eq_hyp,
            new if p.main == old else p.main,
            p.left_to_right,
            p.context,
            aux,
            sub,
        )
    # Ind
    base_aux, base = _ren_binder(p.base_aux, p.base, old, new)
    step_hyp, step_concl, step = _ren_binder2(
        p.step_hyp, p.step_concl, p.step, old, new
    )
    return ind(
        new if p.main == old else p.main,
        p.motive,
        p.target,
        base_aux,
        base,
        p.eigen,
        step_hyp,
        step_concl,
        step,
    )


def _ren_binder2(b1: int, b2: int, sub: Proof, old: int, new: int):
    """Rename under two simultaneous binders."""
    if old == b1 or old == b2 or not sub.fh & hbit(old):
        return b1, b2, sub
    if b1 == new:
        nb = fresh_from_mask(sub.fh | hbit(new) | hbit(old) | hbit(b2), b1 > 0)
        sub = _ren(sub, b1, nb)
        b1 = nb
    if b2 == new:
        nb = fresh_from_mask(sub.fh | hbit(new) | hbit(old) | hbit(b1), b2 > 0)
        sub = _ren(sub, b2, nb)
        b2 = nb
    return b1, b2, _ren(sub, old, new)


# ------------------------------------------------ expression substitution


def proof_subst(p: Proof, sub: dict) -> Proof:
    """Apply an expression substitution to every formula and term in p.

    Capture-avoiding in the eigenvariables of AllR and Ind. Stored
    expressions that change are re-normalized, so a proof over beta-normal
    formulas stays that way.
    """
    sub = {v: t for v, t in sub.items() if t is not v}
    if not sub:
        return p
    return _psub(p, sub)


def _apply(e: Expr, sub: dict) -> Expr:
    e2 = subst_apply(e, sub)
    return e2 if e2 is e else beta_normalize(e2)


def _psub(p: Proof, sub: dict) -> Proof:
    fv = p.fv
    if fv.isdisjoint(sub):
        return p
    t = type(p)
    if t is Cut:
        return cut(
            _apply(p.formula, sub),
            p.h1,
            _psub(p.left, sub),
            p.h2,
            _psub(p.right, sub),
        )
    if t is NegL:
        return negl(p.main, p.aux, _psub(p.sub, sub))
    if t is NegR:
        return negr(p.main, p.aux, _psub(p.sub, sub))
    if t is AndL:
        return andl(p.main, p.aux1, p.aux2, _psub(p.sub, sub))
    if t is AndR:
        return andr(p.main, p.aux1, _psub(p.left, sub), p.aux2, _psub(p.right, sub))
    if t is AllL:
        return alll(p.main, _apply(p.instance, sub), p.aux, _psub(p.sub, sub))
    if t is AllR:
        eigen, s2 = _psub_eigen(p.eigen, p.sub, sub)
        return allr(p.main, eigen, p.aux, s2)
    if t is Eql:
        return eql(
            p.eq_hyp,
            p.main,
            p.left_to_right,
            _apply(p.context, sub),
            p.aux,
            _psub(p.sub, sub),
        )
    if t is Ind:
        eigen, step2 = _psub_eigen(p.eigen, p.step, sub)
        return ind(
            p.main,
            _apply(p.motive, sub),
            _apply(p.target, sub),
            p.base_aux,
            _psub(p.base, sub),
            eigen,
            p.step_hyp,
            p.step_concl,
            step2,
        )
    # Ax, TopR, Rfl carry no expressions; unreachable past the fv guard.
    return p


def _psub_eigen(eigen: Var, body: Proof, sub: dict):
    sub2 = {v: s for v, s in sub.items() if v is not eigen and v in body.fv}
    if not sub2:
        return eigen, body
    if any(eigen in s.free_vars for s in sub2.values()):
        avoid = set(body.fv)
        for s in sub2.values():
            avoid |= s.free_vars
        ny = fresh_variant(eigen, avoid)
        sub2[eigen] = ny
        return ny, _psub(body, sub2)
    return eigen, _psub(body, sub2)


# -------------------------------------------------------------- equality


def proof_eq(a: Proof, b: Proof) -> bool:
    stack = [(a, b)]
    while stack:
        a, b = stack.pop()
        if a is b:
            continue
        ta = type(a)
        if ta is not type(b) or a.hsh != b.hsh or a.fh != b.fh:
            return False
        if ta is Ax:
            if a.h1 != b.h1 or a.h2 != b.h2:
                return False
        elif ta is TopR or ta is Rfl:
            if a.h != b.h:
                return False
        elif ta is Cut:
            if a.h1 != b.h1 or a.h2 != b.h2 or a.formula is not b.formula:
                return False
            stack.append((a.left, b.left))
            stack.append((a.right, b.right))
        elif ta is NegL or ta is NegR:
            if a.main != b.main or a.aux != b.aux:
                return False
            stack.append((a.sub, b.sub))
        elif ta is AndL:
            if a.main != b.main or a.aux1 != b.aux1 or a.aux2 != b.aux2:
                return False
            stack.append((a.sub, b.sub))
        elif ta is AndR:
            if a.main != b.main or a.aux1 != b.aux1 or a.aux2 != b.aux2:
                return False
            stack.append((a.left, b.left))
            stack.append((a.right, b.right))
        elif ta is AllL:
            if a.main != b.main or a.aux != b.aux or a.instance is not b.instance:
                return False
            stack.append((a.sub, b.sub))
        elif ta is AllR:
            if a.main != b.main or a.aux != b.aux or a.eigen is not b.eigen:
                return False
            stack.append((a.sub, b.sub))
        elif ta is Eql:
            if (
                a.eq_hyp != b.eq_hyp
                or a.main != b.main
                or a.left_to_right != b.left_to_right
                or a.aux != b.aux
                or a.context is not b.context
            ):
                return False
            stack.append((a.sub, b.sub))
        else:
            if (
                a.main != b.main
                or a.base_aux != b.base_aux
                or a.step_hyp != b.step_hyp
                or a.step_concl != b.step_concl
                or a.eigen is not b.eigen
                or a.motive is not b.motive
                or a.target is not b.target
            ):
                return False
            stack.append((a.base, b.base))
            stack.append((a.step, b.step))
    return True


# ------------------------------------------------------------- utilities


def cut_count(p: Proof) -> int:
    n = 0
    stack = [p]
    while stack:
        q = stack.pop()
        t = type(q)
        if t is Cut:
            n += 1
            stack.append(q.left)
            stack.append(q.right)
        elif t is NegL or t is NegR or t is AndL or t is AllL or t is AllR or t is Eql:
            stack.append(q.sub)
        elif t is AndR:
            stack.append(q.left)
            stack.append(q.right)
        elif t is Ind:
            stack.append(q.base)
            stack.append(q.step)
    return n


def count_nodes(p: Proof, kind: type) -> int:
    n = 0
    stack = [p]
    while stack:
        q = stack.pop()
        if type(q) is kind:
            n += 1
        t = type(q)
        if t is Cut or t is AndR:
            stack.append(q.left)
            stack.append(q.right)
        elif t is Ind:
            stack.append(q.base)
            stack.append(q.step)
        elif t is not Ax and t is not TopR and t is not Rfl:
            stack.append(q.sub)
    return n


def iter_nodes(p: Proof):
    stack = [p]
    while stack:
        q = stack.pop()
        yield q
        t = type(q)
        if t is Cut or t is AndR:
            stack.append(q.left)
            stack.append(q.right)
        elif t is Ind:
            stack.append(q.base)
            stack.append(q.step)
        elif t is not Ax and t is not TopR and t is not Rfl:
            stack.append(q.sub)


def freshen_apart(p: Proof) -> Proof:
    """Rename bound hypotheses so every binder in the result is distinct
    from every other binder and from every free hypothesis."""
    ctr = [p.fh.bit_length() // 2]

    def take(sign_of: int) -> int:
        ctr[0] += 1
        return ctr[0] if sign_of > 0 else -ctr[0]

    def go(q: Proof, env: dict) -> Proof:
        t = type(q)
        if t is Ax:
            return ax(env.get(q.h1, q.h1), env.get(q.h2, q.h2))
        if t is TopR:
            return topr(env.get(q.h, q.h))
        if t is Rfl:
            return rfl(env.get(q.h, q.h))
        if t is Cut:
            n1 = take(q.h1)
            n2 = take(q.h2)
            return cut(
                q.formula,
                n1,
                go(q.left, {**env, q.h1: n1}),
                n2,
                go(q.right, {**env, q.h2: n2}),
            )
        if t is NegL or t is NegR:
            na = take(q.aux)
            s = go(q.sub, {**env, q.aux: na})
            mk = negl if t is NegL else negr
            return mk(env.get(q.main, q.main), na, s)
        if t is AndL:
            n1 = take(q.aux1)
            n2 = take(q.aux2)
            s = go(q.sub, {**env, q.aux1: n1, q.aux2: n2})
            return andl(env.get(q.main, q.main), n1, n2, s)
        if t is AndR:
            n1 = take(q.aux1)
            n2 = take(q.aux2)
            return andr(
                env.get(q.main, q.main),
                n1,
                go(q.left, {**env, q.aux1: n1}),
                n2,
                go(q.right, {**env, q.aux2: n2}),
            )
        if t is AllL:
            na = take(q.aux)
            s = go(q.sub, {**env, q.aux: na})
            return alll(env.get(q.main, q.main), q.instance, na, s)
        if t is AllR:
            na = take(q.aux)
            s = go(q.sub, {**env, q.aux: na})
            return allr(env.get(q.main, q.main), q.eigen, na, s)
        if t is Eql:
            na = take(q.aux)
            s = go(q.sub, {**env, q.aux: na})
            return eql(
                env.get(q.eq_hyp, q.eq_hyp),
                env.get(q.main, q.main),
                q.left_to_right,
                q.context,
                na,
                s,
            )
        nb = take(q.base_aux)
        nh = take(q.step_hyp)
        nc = take(q.step_concl)
        return ind(
            env.get(q.main, q.main),
            q.motive,
            q.target,
            nb,
            go(q.base, {**env, q.base_aux: nb}),
            q.eigen,
            nh,
            nc,
            go(q.step, {**env, q.step_hyp: nh, q.step_concl: nc}),
        )

    return go(p, {})


def audit(p: Proof) -> bool:
    """Recompute every cache from scratch and compare. Debug helper."""

    def go(q: Proof):
        t = type(q)
        if t is Ax:
            r = ax(q.h1, q.h2)
        elif t is TopR:
            r = topr(q.h)
        elif t is Rfl:
            r = rfl(q.h)
        elif t is Cut:
            go(q.left)
            go(q.right)
            r = cut(q.formula, q.h1, q.left, q.h2, q.right)
        elif t is NegL:
            go(q.sub)
            r = negl(q.main, q.aux, q.sub)
        elif t is NegR:
            go(q.sub)
            r = negr(q.main, q.aux, q.sub)
        elif t is AndL:
            go(q.sub)
            r = andl(q.main, q.aux1, q.aux2, q.sub)
        elif t is AndR:
            go(q.left)
            go(q.right)
            r = andr(q.main, q.aux1, q.left, q.aux2, q.right)
        elif t is AllL:
            go(q.sub)
            r = alll(q.main, q.instance, q.aux, q.sub)
        elif t is AllR:
            go(q.sub)
            r = allr(q.main, q.eigen, q.aux, q.sub)
        elif t is Eql:
            go(q.sub)
            r = eql(
                q.eq_hyp, q.main, q.left_to_right, q.context, q.aux, q.sub
            )
        else:
            go(q.base)
            go(q.step)
            r = ind(
                q.main,
                q.motive,
                q.target,
                q.base_aux,
                q.base,
                q.eigen,
                q.step_hyp,
                q.step_concl,
                q.step,
            )
        assert r.fh == q.fh, f"fh cache wrong at {type(q).__name__}"
        assert r.fv == q.fv, f"fv cache wrong at {type(q).__name__}"
        assert r.size == q.size, f"size cache wrong at {type(q).__name__}"
        assert r.hsh == q.hsh, f"hsh cache wrong at {type(q).__name__}"

    go(p)
    return True


def _pstr(p: Proof, depth: int) -> str:
    t = type(p)
    if t is Ax:
        return f"(ax {p.h1} {p.h2})"
    if t is TopR:
        return f"(top-r {p.h})"
    if t is Rfl:
        return f"(rfl {p.h})"
    if depth <= 0:
        return "..."
    d = depth - 1
    if t is Cut:
        return f"(cut {p.formula} {p.h1}: {_pstr(p.left, d)} {p.h2}: {_pstr(p.right, d)})"
    if t is NegL:
        return f"(not-l {p.main} {p.aux}: {_pstr(p.sub, d)})"
    if t is NegR:
        return f"(not-r {p.main} {p.aux}: {_pstr(p.sub, d)})"
    if t is AndL:
        return f"(and-l {p.main} {p.aux1} {p.aux2}: {_pstr(p.sub, d)})"
    if t is AndR:
        return f"(and-r {p.main} {p.aux1}: {_pstr(p.left, d)} {p.aux2}: {_pstr(p.right, d)})"
    if t is AllL:
        return f"(all-l {p.main} {p.instance} {p.aux}: {_pstr(p.sub, d)})"
    if t is AllR:
        return f"(all-r {p.main} {p.eigen.name} {p.aux}: {_pstr(p.sub, d)})"
    if t is Eql:
        dirn = "lr" if p.left_to_right else "rl"
        return f"(eql {p.eq_hyp} {p.main} {dirn} {p.context} {p.aux}: {_pstr(p.sub, d)})"
    return (
        f"(ind {p.main} {p.motive} {p.target} "
        f"{p.base_aux}: {_pstr(p.base, d)} "
        f"{p.eigen.name} {p.step_hyp} {p.step_concl}: {_pstr(p.step, d)})"
    )
