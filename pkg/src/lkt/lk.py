"""Tree-of-sequents baseline: explicit structural rules, context
splitting, and stepwise cut reduction.

This is the reference implementation the compact representation is
measured against. Sequents are multisets of canonical formulas; every
rule application is a tree node carrying its full conclusion, so
contraction and weakening are explicit chains and cut reduction
duplicates subtrees instead of splicing.

Cut elimination reduces an uppermost cut (both premises cut-free) one
step at a time, preserving every node's stored conclusion exactly.
"""
from __future__ import annotations

from collections import Counter

from .terms import Expr, Var, alpha_canon, app, beta_normalize, fresh_variant, subst_apply
from .formulas import bot, split, top
from .proofs import (
    AllL,
    AllR,
    AndL,
    AndR,
    Ax,
    Cut,
    NegL,
    NegR,
    Proof,
    TopR,
    alll as _alll,
    allr as _allr,
    andl as _andl,
    andr as _andr,
    ax as _ax,
    cut as _cut,
    freshen_apart,
    hbit,
    hyps_of_mask,
    negl as _negl,
    negr as _negr,
    topr as _topr,
)
from .deepstack import run_deep


class UnsupportedNode(Exception):
    """The baseline covers the pure first-order fragment; reflexivity,
    equality steps and induction have no tree counterpart here."""


def cn(f: Expr) -> Expr:
    return alpha_canon(beta_normalize(f))


class Seq:
    """A two-sided multiset of canonical formulas."""

    __slots__ = ("ant", "suc")

    def __init__(self, ant=(), suc=()):
        self.ant = Counter(ant) if not isinstance(ant, Counter) else +ant
        self.suc = Counter(suc) if not isinstance(suc, Counter) else +suc

    def copy(self) -> "Seq":
        s = Seq.__new__(Seq)
        s.ant = +self.ant
        s.suc = +self.suc
        return s

    def __eq__(self, other):
        return self.ant == other.ant and self.suc == other.suc

    def __hash__(self):
        return hash(
            (frozenset(self.ant.items()), frozenset(self.suc.items()))
        )

    def free_vars(self):
        out = set()
        for f in self.ant:
            out |= f.free_vars
        for f in self.suc:
            out |= f.free_vars
        return out

    def __repr__(self):
        lhs = ", ".join(str(f) for f in self.ant.elements())
        rhs = ", ".join(str(f) for f in self.suc.elements())
        return f"{lhs} |- {rhs}"


class TNode:
    __slots__ = ("rule", "formula", "term", "eigen", "prems", "seq", "has_cut", "size")

    def __init__(self, rule, formula, term, eigen, prems, seq):
        self.rule = rule
        self.formula = formula
        self.term = term
        self.eigen = eigen
        self.prems = prems
        self.seq = seq
        self.has_cut = rule == "cut" or any(p.has_cut for p in prems)
        self.size = 1 + sum(p.size for p in prems)

    def __repr__(self):
        return f"<{self.rule} {self.seq!r}>"


def tree_size(t: TNode) -> int:
    return t.size


def tree_cut_count(t: TNode) -> int:
    n = 1 if t.rule == "cut" else 0
    return n + sum(tree_cut_count(p) for p in t.prems)


def _mk(rule, formula, term, eigen, prems, seq) -> TNode:
    return TNode(rule, formula, term, eigen, tuple(prems), seq)


def _take(c: Counter, f: Expr, k: int = 1) -> Counter:
    if c[f] < k:
        raise AssertionError(f"missing {f} in {c}")
    d = +c
    d[f] -= k
    if d[f] == 0:
        del d[f]
    return d


def t_ax(f: Expr) -> TNode:
    return _mk("ax", f, None, None, (), Seq([f], [f]))


def t_topR() -> TNode:
    return _mk("topR", top, None, None, (), Seq([], [top]))


def t_botL() -> TNode:
    return _mk("botL", bot, None, None, (), Seq([bot], []))


def t_wl(f: Expr, p: TNode) -> TNode:
    s = p.seq.copy()
    s.ant[f] += 1
    return _mk("wl", f, None, None, (p,), s)


def t_wr(f: Expr, p: TNode) -> TNode:
    s = p.seq.copy()
    s.suc[f] += 1
    return _mk("wr", f, None, None, (p,), s)


def t_cl(f: Expr, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = _take(p.seq.ant, f)
    s.suc = +p.seq.suc
    return _mk("cl", f, None, None, (p,), s)


def t_cr(f: Expr, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = +p.seq.ant
    s.suc = _take(p.seq.suc, f)
    return _mk("cr", f, None, None, (p,), s)


def t_negL(f: Expr, p: TNode) -> TNode:
    a = split(f)[1]
    s = Seq.__new__(Seq)
    s.ant = +p.seq.ant
    s.ant[f] += 1
    s.suc = _take(p.seq.suc, a)
    return _mk("negL", f, None, None, (p,), s)


def t_negR(f: Expr, p: TNode) -> TNode:
    a = split(f)[1]
    s = Seq.__new__(Seq)
    s.ant = _take(p.seq.ant, a)
    s.suc = +p.seq.suc
    s.suc[f] += 1
    return _mk("negR", f, None, None, (p,), s)


def t_andL(f: Expr, p: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = _take(_take(p.seq.ant, a), b)
    s.ant[f] += 1
    s.suc = +p.seq.suc
    return _mk("andL", f, None, None, (p,), s)


def t_andR(f: Expr, p1: TNode, p2: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = p1.seq.ant + p2.seq.ant
    s.suc = _take(p1.seq.suc, a) + _take(p2.seq.suc, b)
    s.suc[f] += 1
    return _mk("andR", f, None, None, (p1, p2), s)


def t_orR(f: Expr, p: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = +p.seq.ant
    s.suc = _take(_take(p.seq.suc, a), b)
    s.suc[f] += 1
    return _mk("orR", f, None, None, (p,), s)


def t_orL(f: Expr, p1: TNode, p2: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = _take(p1.seq.ant, a) + _take(p2.seq.ant, b)
    s.ant[f] += 1
    s.suc = p1.seq.suc + p2.seq.suc
    return _mk("orL", f, None, None, (p1, p2), s)


def t_impR(f: Expr, p: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = _take(p.seq.ant, a)
    s.suc = _take(p.seq.suc, b)
    s.suc[f] += 1
    return _mk("impR", f, None, None, (p,), s)


def t_impL(f: Expr, p1: TNode, p2: TNode) -> TNode:
    _, a, b = split(f)
    s = Seq.__new__(Seq)
    s.ant = p1.seq.ant + _take(p2.seq.ant, b)
    s.ant[f] += 1
    s.suc = _take(p1.seq.suc, a) + p2.seq.suc
    return _mk("impL", f, None, None, (p1, p2), s)


def _inst(f: Expr, t: Expr) -> Expr:
    lam = split(f)[1]
    return cn(app(lam, t))


def t_allL(f: Expr, term: Expr, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = _take(p.seq.ant, _inst(f, term))
    s.ant[f] += 1
    s.suc = +p.seq.suc
    return _mk("allL", f, term, None, (p,), s)


def t_allR(f: Expr, y: Var, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = +p.seq.ant
    s.suc = _take(p.seq.suc, _inst(f, y))
    s.suc[f] += 1
    node = _mk("allR", f, None, y, (p,), s)
    return node


def t_exL(f: Expr, y: Var, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = _take(p.seq.ant, _inst(f, y))
    s.ant[f] += 1
    s.suc = +p.seq.suc
    return _mk("exL", f, None, y, (p,), s)


def t_exR(f: Expr, term: Expr, p: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = +p.seq.ant
    s.suc = _take(p.seq.suc, _inst(f, term))
    s.suc[f] += 1
    return _mk("exR", f, term, None, (p,), s)


def t_cut(f: Expr, p1: TNode, p2: TNode) -> TNode:
    s = Seq.__new__(Seq)
    s.ant = p1.seq.ant + _take(p2.seq.ant, f)
    s.suc = _take(p1.seq.suc, f) + p2.seq.suc
    return _mk("cut", f, None, None, (p1, p2), s)


_CTOR1 = {
    "wl": t_wl,
    "wr": t_wr,
    "cl": t_cl,
    "cr": t_cr,
    "negL": t_negL,
    "negR": t_negR,
    "andL": t_andL,
    "orR": t_orR,
    "impR": t_impR,
}
_CTOR2 = {
    "andR": t_andR,
    "orL": t_orL,
    "impL": t_impL,
    "cut": t_cut,
}


def rebuild(t: TNode, prems) -> TNode:
    r = t.rule
    if r in _CTOR1:
        return _CTOR1[r](t.formula, prems[0])
    if r in _CTOR2:
        return _CTOR2[r](t.formula, prems[0], prems[1])
    if r == "allL":
        return t_allL(t.formula, t.term, prems[0])
    if r == "exR":
        return t_exR(t.formula, t.term, prems[0])
    if r == "allR":
        return t_allR(t.formula, t.eigen, prems[0])
    if r == "exL":
        return t_exL(t.formula, t.eigen, prems[0])
    raise AssertionError(f"leaf rule {r}")


# ------------------------------------------------------------ weaken/contract


def weaken_to(t: TNode, target: Seq) -> TNode:
    for f, k in (target.ant - t.seq.ant).items():
        for _ in range(k):
            t = t_wl(f, t)
    for f, k in (target.suc - t.seq.suc).items():
        for _ in range(k):
            t = t_wr(f, t)
    return t


def contract_to(t: TNode, target: Seq) -> TNode:
    for f, k in (t.seq.ant - target.ant).items():
        for _ in range(k):
            t = t_cl(f, t)
    for f, k in (t.seq.suc - target.suc).items():
        for _ in range(k):
            t = t_cr(f, t)
    return t


# ------------------------------------------------------------ translation


def seq_of_ctx(ctx: dict) -> Seq:
    ant = [cn(f) for h, f in ctx.items() if h < 0]
    suc = [cn(f) for h, f in ctx.items() if h > 0]
    return Seq(ant, suc)


def to_tree(p: Proof, ctx: dict) -> TNode:
    """Translate a checked proof into the tree calculus. The result
    concludes exactly the canonical end sequent of ctx.

    Internally each subproof is translated to a tree concluding just
    the formulas of its free hypotheses, so weakening appears only for
    unused bindings and contraction only where a hypothesis is really
    reused; the root is then weakened out to the full end sequent."""
    p = freshen_apart(p)
    lctx = {h: cn(f) for h, f in ctx.items()}
    core = run_deep(_tt, p, lctx)
    return weaken_to(core, seq_of_ctx(ctx))


def _fh_seq(p: Proof, lctx: dict) -> Seq:
    ant = []
    suc = []
    for h in hyps_of_mask(p.fh):
        (ant if h < 0 else suc).append(lctx[h])
    return Seq(ant, suc)


def _ensure(t: TNode, h: int, f: Expr, present: bool) -> TNode:
    if present:
        return t
    return t_wl(f, t) if h < 0 else t_wr(f, t)


def _tt(p: Proof, lctx: dict) -> TNode:
    t = type(p)
    if t is Ax:
        return t_ax(lctx[p.h1])
    if t is TopR:
        return t_topR() if p.h > 0 else t_botL()
    if t is Cut:
        f = cn(p.formula)
        p1 = _ensure(
            _tt(p.left, {**lctx, p.h1: f}), p.h1, f, bool(p.left.fh & hbit(p.h1))
        )
        p2 = _ensure(
            _tt(p.right, {**lctx, p.h2: f}), p.h2, f, bool(p.right.fh & hbit(p.h2))
        )
        return contract_to(t_cut(f, p1, p2), _fh_seq(p, lctx))
    if t is NegL or t is NegR:
        f = lctx[p.main]
        a = split(f)[1]
        sub = _ensure(
            _tt(p.sub, {**lctx, p.aux: a}), p.aux, a, bool(p.sub.fh & hbit(p.aux))
        )
        rule = t_negL(f, sub) if t is NegL else t_negR(f, sub)
        return contract_to(rule, _fh_seq(p, lctx))
    if t is AndL:
        f = lctx[p.main]
        tag, a, b = split(f)
        sub = _tt(p.sub, {**lctx, p.aux1: a, p.aux2: b})
        sub = _ensure(sub, p.aux1, a, bool(p.sub.fh & hbit(p.aux1)))
        sub = _ensure(sub, p.aux2, b, bool(p.sub.fh & hbit(p.aux2)))
        if p.main < 0:
            rule = t_andL(f, sub)
        elif tag == "or":
            rule = t_orR(f, sub)
        else:
            rule = t_impR(f, sub)
        return contract_to(rule, _fh_seq(p, lctx))
    if t is AndR:
        f = lctx[p.main]
        tag, a, b = split(f)
        p1 = _ensure(
            _tt(p.left, {**lctx, p.aux1: a}), p.aux1, a, bool(p.left.fh & hbit(p.aux1))
        )
        p2 = _ensure(
            _tt(p.right, {**lctx, p.aux2: b}), p.aux2, b, bool(p.right.fh & hbit(p.aux2))
        )
        if p.main > 0:
            rule = t_andR(f, p1, p2)
        elif tag == "or":
            rule = t_orL(f, p1, p2)
        else:
            rule = t_impL(f, p1, p2)
        return contract_to(rule, _fh_seq(p, lctx))
    if t is AllL:
        f = lctx[p.main]
        inst = _inst(f, p.instance)
        sub = _ensure(
            _tt(p.sub, {**lctx, p.aux: inst}), p.aux, inst, bool(p.sub.fh & hbit(p.aux))
        )
        rule = (
            t_allL(f, p.instance, sub) if p.main < 0 else t_exR(f, p.instance, sub)
        )
        return contract_to(rule, _fh_seq(p, lctx))
    if t is AllR:
        f = lctx[p.main]
        inst = _inst(f, p.eigen)
        sub = _ensure(
            _tt(p.sub, {**lctx, p.aux: inst}), p.aux, inst, bool(p.sub.fh & hbit(p.aux))
        )
        rule = t_allR(f, p.eigen, sub) if p.main > 0 else t_exL(f, p.eigen, sub)
        return contract_to(rule, _fh_seq(p, lctx))
    raise UnsupportedNode(f"{t.__name__} has no tree counterpart")


# ------------------------------------------------------------ substitution


def subst_tree(t: TNode, sub: dict) -> TNode:
    """Capture-avoiding substitution into every formula, term and
    conclusion of a tree."""
    rng_fvs = set()
    for v in sub.values():
        rng_fvs |= v.free_vars
    return _st(t, sub, rng_fvs)


def _st(t: TNode, sub: dict, rng_fvs: set) -> TNode:
    if not sub:
        return t
    seq_fvs = t.seq.free_vars()
    live = False
    for v in sub:
        if (
            v in seq_fvs
            or (t.term is not None and v in t.term.free_vars)
            or (t.rule == "cut" and v in t.formula.free_vars)
        ):
            live = True
            break
    if not live:
        return t
    y = t.eigen
    if y is not None:
        sub2 = {v: e for v, e in sub.items() if v is not y}
        if y in rng_fvs:
            avoid = set(rng_fvs) | t.prems[0].seq.free_vars() | set(sub2)
            y2 = fresh_variant(y, avoid)
            prem = _st(t.prems[0], {**sub2, y: y2}, rng_fvs | {y2})
            if t.rule == "allR":
                return t_allR(cn(subst_apply(t.formula, sub2)), y2, prem)
            return t_exL(cn(subst_apply(t.formula, sub2)), y2, prem)
        prem = _st(t.prems[0], sub2, rng_fvs)
        if t.rule == "allR":
            return t_allR(cn(subst_apply(t.formula, sub2)), y, prem)
        return t_exL(cn(subst_apply(t.formula, sub2)), y, prem)

    prems = [_st(p, sub, rng_fvs) for p in t.prems]
    r = t.rule
    if r == "ax":
        return t_ax(cn(subst_apply(t.formula, sub)))
    if r == "topR" or r == "botL":
        return t
    f = cn(subst_apply(t.formula, sub))
    if r in _CTOR1:
        return _CTOR1[r](f, prems[0])
    if r in _CTOR2:
        return _CTOR2[r](f, prems[0], prems[1])
    term = beta_normalize(subst_apply(t.term, sub))
    if r == "allL":
        return t_allL(f, term, prems[0])
    return t_exR(f, term, prems[0])


# ------------------------------------------------------------ cut reduction

_R_PRINCIPAL = {"negR", "andR", "orR", "impR", "allR", "exR", "topR"}
_L_PRINCIPAL = {"negL", "andL", "orL", "impL", "allL", "exL", "botL"}


def _push_into(i: int, holder: TNode, cutf: Expr, other: TNode, left: bool) -> TNode:
    """Rebuild holder with the cut moved into premise i."""
    prem = holder.prems[i]
    y = holder.eigen
    if y is not None and (y in other.seq.free_vars() or y in cutf.free_vars):
        avoid = other.seq.free_vars() | cutf.free_vars | prem.seq.free_vars()
        y2 = fresh_variant(y, avoid)
        prem = subst_tree(prem, {y: y2})
        inner = t_cut(cutf, prem, other) if left else t_cut(cutf, other, prem)
        ctor = t_allR if holder.rule == "allR" else t_exL
        return ctor(holder.formula, y2, inner)
    inner = t_cut(cutf, prem, other) if left else t_cut(cutf, other, prem)
    prems = list(holder.prems)
    prems[i] = inner
    return rebuild(holder, prems)


def _avail_suc(t: TNode, i: int, f: Expr) -> bool:
    """Does premise i of t carry an occurrence of f in its succedent
    that the rule does not consume?"""
    prem = t.prems[i]
    have = prem.seq.suc[f]
    r = t.rule
    consumed = 0
    if r == "negL" and split(t.formula)[1] is f:
        consumed = 1
    elif r == "andR" and split(t.formula)[i + 1] is f:
        consumed = 1
    elif r == "orR":
        _, a, b = split(t.formula)
        consumed = (1 if a is f else 0) + (1 if b is f else 0)
    elif r == "impR" and split(t.formula)[2] is f:
        consumed = 1
    elif r == "impL" and i == 0 and split(t.formula)[1] is f:
        consumed = 1
    elif r == "allR" and _inst(t.formula, t.eigen) is f:
        consumed = 1
    elif r == "exR" and _inst(t.formula, t.term) is f:
        consumed = 1
    return have - consumed >= 1


def _avail_ant(t: TNode, i: int, f: Expr) -> bool:
    prem = t.prems[i]
    have = prem.seq.ant[f]
    r = t.rule
    consumed = 0
    if r == "negR" and split(t.formula)[1] is f:
        consumed = 1
    elif r == "andL":
        _, a, b = split(t.formula)
        consumed = (1 if a is f else 0) + (1 if b is f else 0)
    elif r == "orL" and split(t.formula)[i + 1] is f:
        consumed = 1
    elif r == "impR" and split(t.formula)[1] is f:
        consumed = 1
    elif r == "impL" and i == 1 and split(t.formula)[2] is f:
        consumed = 1
    elif r == "allL" and _inst(t.formula, t.term) is f:
        consumed = 1
    elif r == "exL" and _inst(t.formula, t.eigen) is f:
        consumed = 1
    return have - consumed >= 1


def reduce_cut(c: TNode) -> TNode:
    """One reduction step on a cut with cut-free premises; returns a
    tree with the same conclusion."""
    f = c.formula
    t1, t2 = c.prems
    if t1.rule == "wr" and t1.formula is f:
        return weaken_to(t1.prems[0], c.seq)
    if t2.rule == "wl" and t2.formula is f:
        return weaken_to(t2.prems[0], c.seq)
    if t1.rule == "ax":
        return t2
    if t2.rule == "ax":
        return t1
    if t1.rule == "cr" and t1.formula is f:
        u = t1.prems[0]
        return contract_to(t_cut(f, t_cut(f, u, t2), t2), c.seq)
    if t2.rule == "cl" and t2.formula is f:
        v = t2.prems[0]
        return contract_to(t_cut(f, t1, t_cut(f, t1, v)), c.seq)

    pl = t1.rule in _R_PRINCIPAL and t1.formula is f
    pr = t2.rule in _L_PRINCIPAL and t2.formula is f

    if pl and pr:
        tag = split(f)[0]
        if tag == "not":
            u = t1.prems[0]
            v = t2.prems[0]
            a = split(f)[1]
            return t_cut(a, v, u)
        if tag == "and":
            _, a, b = split(f)
            u1, u2 = t1.prems
            v = t2.prems[0]
            return t_cut(a, u1, t_cut(b, u2, v))
        if tag == "or":
            _, a, b = split(f)
            u = t1.prems[0]
            v1, v2 = t2.prems
            return t_cut(b, t_cut(a, u, v1), v2)
        if tag == "imp":
            _, a, b = split(f)
            u = t1.prems[0]
            v1, v2 = t2.prems
            return t_cut(b, t_cut(a, v1, u), v2)
        if tag == "all":
            u = t1.prems[0]
            y = t1.eigen
            term = t2.term
            a = _inst(f, term)
            return t_cut(a, subst_tree(u, {y: term}), t2.prems[0])
        if tag == "ex":
            u = t1.prems[0]
            term = t1.term
            y = t2.eigen
            a = _inst(f, term)
            return t_cut(a, u, subst_tree(t2.prems[0], {y: term}))
        raise AssertionError(f"no grade reduction for {tag}")

    if not pl:
        for i in range(len(t1.prems)):
            if _avail_suc(t1, i, f):
                return _push_into(i, t1, f, t2, left=True)
        raise AssertionError(f"no premise of {t1.rule} carries {f}")
    for i in range(len(t2.prems)):
        if _avail_ant(t2, i, f):
            return _push_into(i, t2, f, t1, left=False)
    raise AssertionError(f"no premise of {t2.rule} carries {f}")


def _elim(t: TNode) -> TNode:
    while True:
        if not t.has_cut:
            return t
        if t.rule != "cut":
            return rebuild(t, [_elim(p) for p in t.prems])
        p1 = _elim(t.prems[0])
        p2 = _elim(t.prems[1])
        t = reduce_cut(t_cut(t.formula, p1, p2))


def gentzen_eliminate(t: TNode) -> TNode:
    """Cut elimination, always reducing an uppermost cut: premises are
    made cut-free before their cut takes a step."""
    return run_deep(_elim, t)


# ------------------------------------------------------------ audit


def audit_tree(t: TNode) -> None:
    """Recompute every conclusion from the premises and compare."""

    def go(t: TNode) -> None:
        for p in t.prems:
            go(p)
        r = t.rule
        if r == "ax":
            want = Seq([t.formula], [t.formula])
        elif r == "topR":
            want = Seq([], [top])
        elif r == "botL":
            want = Seq([bot], [])
        else:
            want = rebuild(t, t.prems).seq
        if not (want == t.seq):
            raise AssertionError(f"{r} concludes {t.seq!r}, expected {want!r}")
        if t.eigen is not None and t.eigen in t.seq.free_vars():
            raise AssertionError(f"eigenvariable {t.eigen} free in conclusion")

    run_deep(go, t)

# -------------------------------------------------- tree-to-term reading


def of_tree(t: TNode):
    """Read a tree back as a compact term. Returns (proof, ctx) where ctx
    names every end-sequent occurrence with a fresh hypothesis.

    Contraction reuses a hypothesis, weakening drops one; every rule
    binds fresh names, so the result checks against ctx whenever the
    tree audits.
    """
    counter = [1]

    def fresh(positive: bool) -> int:
        h = counter[0]
        counter[0] += 1
        return h if positive else -h

    ant: dict = {}
    suc: dict = {}
    ctx: dict = {}
    for f, k in t.seq.ant.items():
        for _ in range(k):
            h = fresh(False)
            ant.setdefault(f, []).append(h)
            ctx[h] = f
    for f, k in t.seq.suc.items():
        for _ in range(k):
            h = fresh(True)
            suc.setdefault(f, []).append(h)
            ctx[h] = f
    p = run_deep(_ot, t, ant, suc, fresh)
    return p, ctx


def _pop(occ: dict, f: Expr):
    """(hyp, occ without one f-occurrence)."""
    hs = occ[f]
    out = dict(occ)
    if len(hs) == 1:
        del out[f]
    else:
        out[f] = hs[:-1]
    return hs[-1], out


def _push(occ: dict, f: Expr, h: int) -> dict:
    out = dict(occ)
    out[f] = out.get(f, []) + [h]
    return out


def _ot(t: TNode, ant: dict, suc: dict, fresh) -> Proof:
    r = t.rule
    f = t.formula
    if r == "ax":
        return _ax(ant[f][-1], suc[f][-1])
    if r == "topR":
        return _topr(suc[top][-1])
    if r == "botL":
        return _topr(ant[bot][-1])
    if r == "wl":
        return _ot(t.prems[0], _pop(ant, f)[1], suc, fresh)
    if r == "wr":
        return _ot(t.prems[0], ant, _pop(suc, f)[1], fresh)
    if r == "cl":
        return _ot(t.prems[0], _push(ant, f, ant[f][-1]), suc, fresh)
    if r == "cr":
        return _ot(t.prems[0], ant, _push(suc, f, suc[f][-1]), fresh)
    if r == "cut":
        h1 = fresh(True)
        h2 = fresh(False)
        left = _ot(t.prems[0], ant, _push(suc, f, h1), fresh)
        right = _ot(t.prems[1], _push(ant, f, h2), suc, fresh)
        return _cut(f, h1, left, h2, right)
    tag = split(f)
    if r == "negL":
        h, ant2 = _pop(ant, f)
        a = fresh(True)
        return _negl(h, a, _ot(t.prems[0], ant2, _push(suc, tag[1], a), fresh))
    if r == "negR":
        h, suc2 = _pop(suc, f)
        a = fresh(False)
        return _negr(h, a, _ot(t.prems[0], _push(ant, tag[1], a), suc2, fresh))
    if r == "andL":
        h, ant2 = _pop(ant, f)
        a1 = fresh(False)
        a2 = fresh(False)
        ant2 = _push(_push(ant2, tag[1], a1), tag[2], a2)
        return _andl(h, a1, a2, _ot(t.prems[0], ant2, suc, fresh))
    if r == "orR":
        h, suc2 = _pop(suc, f)
        a1 = fresh(True)
        a2 = fresh(True)
        suc2 = _push(_push(suc2, tag[1], a1), tag[2], a2)
        return _andl(h, a1, a2, _ot(t.prems[0], ant, suc2, fresh))
    if r == "impR":
        h, suc2 = _pop(suc, f)
        a1 = fresh(False)
        a2 = fresh(True)
        return _andl(
            h,
            a1,
            a2,
            _ot(t.prems[0], _push(ant, tag[1], a1), _push(suc2, tag[2], a2), fresh),
        )
    if r == "andR":
        h, suc2 = _pop(suc, f)
        a1 = fresh(True)
        a2 = fresh(True)
        left = _ot(t.prems[0], ant, _push(suc2, tag[1], a1), fresh)
        right = _ot(t.prems[1], ant, _push(suc2, tag[2], a2), fresh)
        return _andr(h, a1, left, a2, right)
    if r == "orL":
        h, ant2 = _pop(ant, f)
        a1 = fresh(False)
        a2 = fresh(False)
        left = _ot(t.prems[0], _push(ant2, tag[1], a1), suc, fresh)
        right = _ot(t.prems[1], _push(ant2, tag[2], a2), suc, fresh)
        return _andr(h, a1, left, a2, right)
    if r == "impL":
        h, ant2 = _pop(ant, f)
        a1 = fresh(True)
        a2 = fresh(False)
        left = _ot(t.prems[0], ant2, _push(suc, tag[1], a1), fresh)
        right = _ot(t.prems[1], _push(ant2, tag[2], a2), suc, fresh)
        return _andr(h, a1, left, a2, right)
    inst = _inst(f, t.term if t.term is not None else t.eigen)
    if r == "allL":
        h, ant2 = _pop(ant, f)
        a = fresh(False)
        return _alll(h, t.term, a, _ot(t.prems[0], _push(ant2, inst, a), suc, fresh))
    if r == "exR":
        h, suc2 = _pop(suc, f)
        a = fresh(True)
        return _alll(h, t.term, a, _ot(t.prems[0], ant, _push(suc2, inst, a), fresh))
    if r == "allR":
        h, suc2 = _pop(suc, f)
        a = fresh(True)
        return _allr(h, t.eigen, a, _ot(t.prems[0], ant, _push(suc2, inst, a), fresh))
    if r == "exL":
        h, ant2 = _pop(ant, f)
        a = fresh(False)
        return _allr(h, t.eigen, a, _ot(t.prems[0], _push(ant2, inst, a), suc, fresh))
    raise UnsupportedNode(f"cannot read back rule {r!r}")
