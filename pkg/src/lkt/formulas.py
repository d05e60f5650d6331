"""Formulas as expressions of type o, plus the arithmetic signature.

Connectives are fixed interned constants, so recognizing a conjunction
is a couple of identity checks. Quantifiers and equality are type-indexed
constant families: (all tau) has type (tau -> o) -> o and applies to a
lambda, which keeps binding uniform with the expression layer.
"""
from __future__ import annotations

from .terms import (
    Abs,
    App,
    Arrow,
    Const,
    Expr,
    Ty,
    Var,
    abs_,
    app,
    arrow,
    beta_normalize,
    const,
    fn,
    nat,
    o,
)

and_c = const("and", fn(o, o, o))
or_c = const("or", fn(o, o, o))
imp_c = const("imp", fn(o, o, o))
not_c = const("not", fn(o, o))
top = const("top", o)
bot = const("bot", o)


def all_c(ty: Ty) -> Const:
    return const("all", arrow(arrow(ty, o), o))


def ex_c(ty: Ty) -> Const:
    return const("ex", arrow(arrow(ty, o), o))


def eq_c(ty: Ty) -> Const:
    return const("=", fn(ty, ty, o))


def conj(a: Expr, b: Expr) -> Expr:
    return app(app(and_c, a), b)


def disj(a: Expr, b: Expr) -> Expr:
    return app(app(or_c, a), b)


def imp(a: Expr, b: Expr) -> Expr:
    return app(app(imp_c, a), b)


def neg(a: Expr) -> Expr:
    return app(not_c, a)


def eq(t: Expr, s: Expr) -> Expr:
    return app(app(eq_c(t.ty), t), s)


def allq(x: Var, body: Expr) -> Expr:
    return app(all_c(x.ty), abs_(x, body))


def exq(x: Var, body: Expr) -> Expr:
    return app(ex_c(x.ty), abs_(x, body))


def split(f: Expr):
    """Decompose one outer connective.

    Returns a tag tuple: ('and', a, b), ('or', a, b), ('imp', a, b),
    ('not', a), ('top',), ('bot',), ('all', lam), ('ex', lam),
    ('eq', t, s), or ('atom', f). Quantifier payloads are the lambda
    as written, which need not be an Abs node; beta-normal formulas
    always carry one.
    """
    t = type(f)
    if t is App:
        g = f.fun
        tg = type(g)
        if tg is App:
            h = g.fun
            if h is and_c:
                return ("and", g.arg, f.arg)
            if h is or_c:
                return ("or", g.arg, f.arg)
            if h is imp_c:
                return ("imp", g.arg, f.arg)
            if type(h) is Const and h.name == "=" and _is_eq_ty(h.ty):
                return ("eq", g.arg, f.arg)
        elif tg is Const:
            if g is not_c:
                return ("not", f.arg)
            n = g.name
            if (n == "all" or n == "ex") and _is_quant_ty(g.ty):
                return (n, f.arg)
    elif f is top:
        return ("top",)
    elif f is bot:
        return ("bot",)
    return ("atom", f)


def _is_quant_ty(ty: Ty) -> bool:
    # (tau -> o) -> o
    return (
        type(ty) is Arrow
        and ty.cod is o
        and type(ty.dom) is Arrow
        and ty.dom.cod is o
    )


def _is_eq_ty(ty: Ty) -> bool:
    # tau -> tau -> o
    return (
        type(ty) is Arrow
        and type(ty.cod) is Arrow
        and ty.cod.cod is o
        and ty.cod.dom is ty.dom
    )


def is_atom(f: Expr) -> bool:
    """No connective or quantifier at the head; equations count, top and
    bot do not."""
    tag = split(f)[0]
    return tag == "atom" or tag == "eq"


_qfree_memo: dict = {}


def quantifier_free(f: Expr) -> bool:
    r = _qfree_memo.get(f)
    if r is not None:
        return r
    tag = split(f)
    k = tag[0]
    if k in ("atom", "eq", "top", "bot"):
        r = True
    elif k in ("all", "ex"):
        r = False
    elif k == "not":
        r = quantifier_free(tag[1])
    else:
        r = quantifier_free(tag[1]) and quantifier_free(tag[2])
    _qfree_memo[f] = r
    return r


# ------------------------------------------------------------- numerals

zero = const("0", nat)
suc_c = const("s", arrow(nat, nat))


def suc(t: Expr) -> Expr:
    return app(suc_c, t)


def num(k: int) -> Expr:
    t = zero
    for _ in range(k):
        t = app(suc_c, t)
    return t


def sucs(t: Expr, k: int) -> Expr:
    for _ in range(k):
        t = app(suc_c, t)
    return t


def num_of(t: Expr):
    """The k with t = s^k(0), or None if t is not a numeral."""
    k = 0
    while type(t) is App and t.fun is suc_c:
        k += 1
        t = t.arg
    return k if t is zero else None


def strip_sucs(t: Expr):
    """(k, core) with t = s^k(core) and core not an s-application."""
    k = 0
    while type(t) is App and t.fun is suc_c:
        k += 1
        t = t.arg
    return k, t


# ----------------------------------------------------- quantifier blocks


def weak_block_len(f: Expr, positive: bool) -> int:
    """Length of the outermost weak-quantifier prefix.

    Weak means all on the antecedent side (positive=False) or ex on the
    succedent side (positive=True). Counts only syntactic prefixes of
    lambda-quantifier form.
    """
    want = "ex" if positive else "all"
    k = 0
    while True:
        tag = split(f)
        if tag[0] != want or type(tag[1]) is not Abs:
            return k
        k += 1
        f = tag[1].body


def instantiate_block(f: Expr, terms) -> Expr:
    """Strip len(terms) outer quantifiers, substituting the terms."""
    for t in terms:
        tag = split(f)
        if tag[0] not in ("all", "ex"):
            raise ValueError("instantiate_block ran out of quantifiers")
        f = beta_normalize(app(tag[1], t))
    return f
