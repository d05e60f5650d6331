"""Generators for the benchmark proof families.

Each generator returns (proof, context). Hypothesis numbering is
deterministic: the shared end-sequent entries sit at -1, -2, (-3,) +1,
cut names count up from there, and node-local binders live in per-level
blocks computed from n so no two scopes collide at any size.

Families:

  linear(n)          P(0), all x (P x -> P (s x)) |- P(s^n 0),
                     one modus-ponens chain, no cuts.
  linear_cut(n)      same sequent at s^(2^n) 0 via n-1 nested cuts on
                     doubling lemmas all x (P x -> P (s^(2^k) x)).
  linear_acnf(n)     the linear chain broken into n atomic cuts, one
                     per intermediate value.
  square_diagonal(n) Q(0,0) with right/up step axioms |- Q(n,n), all
                     right steps then all up steps.
  square_cut(n)      |- Q(2^n, 2^n) via n cuts on diagonal-doubling
                     lemmas.
  ind_linear(n)      the linear sequent proved by one induction node.
  add_defs(n)        0 + n = n from the recursion equations for plus,
                     by induction; exercises Eql and Rfl.

random_proof grows a well-typed proof by wrapping rules around a leaf,
extending one shared context as it goes; every formula it puts in the
context is closed, which keeps eigenvariable conditions trivially
satisfiable at any wrap point.
"""
from __future__ import annotations

import random

from .terms import (
    Expr,
    abs_,
    app,
    apps,
    arrow,
    const,
    fn,
    nat,
    o,
    var,
)
from .formulas import (
    allq,
    bot,
    conj,
    disj,
    eq,
    imp,
    neg,
    num,
    suc,
    sucs,
    top,
    zero,
)
from .proofs import (
    Proof,
    alll,
    allr,
    andl,
    andr,
    ax,
    cut,
    eql,
    ind,
    negl,
    negr,
    rfl,
    topr,
)

P = const("P", arrow(nat, o))
Q = const("Q", fn(nat, nat, o))
R = const("R", o)
S = const("S", o)
plus_c = const("plus", fn(nat, nat, nat))


def _px(t: Expr) -> Expr:
    return app(P, t)


def _q(a: Expr, b: Expr) -> Expr:
    return apps(Q, a, b)


def _step_formula() -> Expr:
    x = var("x", nat)
    return allq(x, imp(_px(x), _px(suc(x))))


def linear(n: int):
    ctx = {-1: _px(zero), -2: _step_formula(), 1: _px(num(n))}
    if n == 0:
        return ax(-1, 1), ctx
    cur: Proof = ax(-(2 * n + 2), 1)
    for k in range(n - 1, -1, -1):
        hk = -1 if k == 0 else -(2 * k + 2)
        ek = -(2 * k + 3)
        ak = k + 2
        bk = -(2 * k + 4)
        cur = alll(-2, num(k), ek, andr(ek, ak, ax(hk, ak), bk, cur))
    return cur, ctx


def linear_cut(n: int):
    x = var("x", nat)
    step = _step_formula()
    if n == 0:
        return ax(-1, 1), {-1: _px(zero), -2: step, 1: _px(zero)}
    ctx = {-1: _px(zero), -2: step, 1: _px(num(2**n))}

    def lemma(k: int) -> Expr:
        return allq(x, imp(_px(x), _px(sucs(x, 2**k))))

    def block(k: int):
        off = n + 3 + 5 * k
        return off

    def prove(k: int, d: int, main: int) -> Proof:
        # all x (P x -> P(s^{2^k} x)) from the same shape at 2^{k-1}.
        off = block(k)
        g, u, v = off, -off, off + 1
        e1, a1, b1 = -(off + 1), off + 2, -(off + 2)
        e2, a2, b2 = -(off + 3), off + 3, -(off + 4)
        half = 2 ** (k - 1)
        body = alll(
            d,
            x,
            e1,
            andr(
                e1,
                a1,
                ax(u, a1),
                b1,
                alll(
                    d,
                    sucs(x, half),
                    e2,
                    andr(e2, a2, ax(b1, a2), b2, ax(b2, v)),
                ),
            ),
        )
        return allr(main, x, g, andl(g, u, v, body))

    def consumer(d: int) -> Proof:
        off = block(0)
        e1, a1, b1 = -(off + 1), off + 2, -(off + 2)
        e2, a2, b2 = -(off + 3), off + 3, -(off + 4)
        half = 2 ** (n - 1)
        return alll(
            d,
            zero,
            e1,
            andr(
                e1,
                a1,
                ax(-1, a1),
                b1,
                alll(
                    d,
                    num(half),
                    e2,
                    andr(e2, a2, ax(b1, a2), b2, ax(b2, 1)),
                ),
            ),
        )

    cur = consumer(-2 if n == 1 else -(n + 1))
    for k in range(n - 1, 0, -1):
        d_prev = -2 if k == 1 else -(k + 1)
        cur = cut(lemma(k), k + 1, prove(k, d_prev, k + 1), -(k + 2), cur)
    return cur, ctx


def linear_acnf(n: int):
    ctx = {-1: _px(zero), -2: _step_formula(), 1: _px(num(n))}
    if n == 0:
        return ax(-1, 1), ctx

    def mk(k: int, prev: int, u: int) -> Proof:
        # P(s^k 0) at u from P(s^{k-1} 0) at prev.
        e = -(n + 2 + 2 * k)
        a = n + 2 + k
        b = -(n + 3 + 2 * k)
        return alll(-2, num(k - 1), e, andr(e, a, ax(prev, a), b, ax(b, u)))

    cur: Proof = ax(-(n + 2), 1)
    for k in range(n, 0, -1):
        u = k + 1
        v = -(k + 2)
        prev = -1 if k == 1 else -(k + 1)
        cur = cut(_px(num(k)), u, mk(k, prev, u), v, cur)
    return cur, ctx


def _square_axioms():
    x = var("x", nat)
    y = var("y", nat)
    right = allq(x, allq(y, imp(_q(x, y), _q(suc(x), y))))
    up = allq(x, allq(y, imp(_q(x, y), _q(x, suc(y)))))
    return right, up


def square_diagonal(n: int):
    right, up = _square_axioms()
    ctx = {-1: _q(zero, zero), -2: right, -3: up, 1: _q(num(n), num(n))}
    if n == 0:
        return ax(-1, 1), ctx
    cur: Proof = ax(-(4 * 2 * n + 6), 1)
    for j in range(2 * n, 0, -1):
        off = 4 * j + 3
        f, e, a, b = -off, -(off + 1), off + 2, -(off + 3)
        prev = -1 if j == 1 else -(4 * (j - 1) + 6)
        if j <= n:
            ax_h, xi, yi = -2, num(j - 1), zero
        else:
            ax_h, xi, yi = -3, num(n), num(j - n - 1)
        cur = alll(ax_h, xi, f, alll(f, yi, e, andr(e, a, ax(prev, a), b, cur)))
    return cur, ctx


def square_cut(n: int):
    x = var("x", nat)
    y = var("y", nat)
    right, up = _square_axioms()
    if n == 0:
        return ax(-1, 1), {
            -1: _q(zero, zero),
            -2: right,
            -3: up,
            1: _q(zero, zero),
        }
    ctx = {
        -1: _q(zero, zero),
        -2: right,
        -3: up,
        1: _q(num(2**n), num(2**n)),
    }

    def lemma(k: int) -> Expr:
        c = 2 ** (k - 1)
        return allq(x, allq(y, imp(_q(x, y), _q(sucs(x, c), sucs(y, c)))))

    def names(k: int):
        off = n + 5 + 12 * k
        return {
            "g1": off,
            "g2": off + 1,
            "u": -(off + 2),
            "v": off + 3,
            "f1": -(off + 4),
            "e1": -(off + 5),
            "a1": off + 6,
            "b1": -(off + 7),
            "f2": -(off + 8),
            "e2": -(off + 9),
            "a2": off + 10,
            "b2": -(off + 11),
        }

    def chain(ax_h, xi, yi, f, e, a, prev, b, rest) -> Proof:
        return alll(
            ax_h, xi, f, alll(f, yi, e, andr(e, a, ax(prev, a), b, rest))
        )

    def prove1(main: int) -> Proof:
        m = names(1)
        inner = chain(
            -3,
            suc(x),
            y,
            m["f2"],
            m["e2"],
            m["a2"],
            m["b1"],
            m["b2"],
            ax(m["b2"], m["v"]),
        )
        body = chain(-2, x, y, m["f1"], m["e1"], m["a1"], m["u"], m["b1"], inner)
        return allr(
            main,
            x,
            m["g1"],
            allr(m["g1"], y, m["g2"], andl(m["g2"], m["u"], m["v"], body)),
        )

    def prove(k: int, d: int, main: int) -> Proof:
        m = names(k)
        c = 2 ** (k - 2)
        inner = chain(
            d,
            sucs(x, c),
            sucs(y, c),
            m["f2"],
            m["e2"],
            m["a2"],
            m["b1"],
            m["b2"],
            ax(m["b2"], m["v"]),
        )
        body = chain(d, x, y, m["f1"], m["e1"], m["a1"], m["u"], m["b1"], inner)
        return allr(
            main,
            x,
            m["g1"],
            allr(m["g1"], y, m["g2"], andl(m["g2"], m["u"], m["v"], body)),
        )

    def consumer(d: int) -> Proof:
        m = names(0)
        h = num(2 ** (n - 1))
        inner = chain(
            d, h, h, m["f2"], m["e2"], m["a2"], m["b1"], m["b2"], ax(m["b2"], 1)
        )
        return chain(d, zero, zero, m["f1"], m["e1"], m["a1"], -1, m["b1"], inner)

    cur = consumer(-(n + 3))
    for k in range(n, 0, -1):
        pk = prove1(k + 1) if k == 1 else prove(k, -(k + 2), k + 1)
        cur = cut(lemma(k), k + 1, pk, -(k + 3), cur)
    return cur, ctx


def ind_linear(n: int):
    w = var("w", nat)
    y = var("y", nat)
    ctx = {-1: _px(zero), -2: _step_formula(), 1: _px(num(n))}
    motive = abs_(w, _px(w))
    step = alll(-2, y, -5, andr(-5, 6, ax(-3, 6), -7, ax(-7, 4)))
    return ind(1, motive, num(n), 2, ax(-1, 2), y, -3, 4, step), ctx


def _plus(a: Expr, b: Expr) -> Expr:
    return apps(plus_c, a, b)


def plus_defs():
    """The recursion equations for plus, oriented as rewrite rules."""
    x = var("x", nat)
    y = var("y", nat)
    d1 = allq(x, eq(_plus(x, zero), x))
    d2 = allq(x, allq(y, eq(_plus(x, suc(y)), suc(_plus(x, y)))))
    return d1, d2


def _add_defs_core():
    w = var("w", nat)
    y = var("y", nat)
    z = var("z", nat)
    motive = abs_(w, eq(_plus(zero, w), w))
    base = alll(-1, zero, -8, ax(-8, 3))
    c1 = abs_(z, eq(z, suc(y)))
    c2 = abs_(z, eq(suc(z), suc(y)))
    step = alll(
        -2,
        zero,
        -9,
        alll(
            -9,
            y,
            -10,
            eql(-10, 4, True, c1, 5, eql(-3, 5, True, c2, 6, rfl(6))),
        ),
    )
    return motive, base, y, step


def add_defs(n: int):
    """0 + n = n at a concrete numeral, by induction on the recursion
    equations for plus."""
    d1, d2 = plus_defs()
    motive, base, y, step = _add_defs_core()
    ctx = {-1: d1, -2: d2, 1: eq(_plus(zero, num(n)), num(n))}
    return ind(1, motive, num(n), 3, base, y, -3, 4, step), ctx


def add_defs_theorem():
    """The universally quantified form, all w (0 + w = w)."""
    w = var("w", nat)
    d1, d2 = plus_defs()
    motive, base, y, step = _add_defs_core()
    ctx = {-1: d1, -2: d2, 1: allq(w, eq(_plus(zero, w), w))}
    pi = allr(1, w, 2, ind(2, motive, w, 3, base, y, -3, 4, step))
    return pi, ctx


FAMILIES = {
    "linear": linear,
    "linear_cut": linear_cut,
    "linear_acnf": linear_acnf,
    "square_diagonal": square_diagonal,
    "square_cut": square_cut,
    "ind_linear": ind_linear,
    "add_defs": add_defs,
}


# ------------------------------------------------------------ random


def _leaf(rng: random.Random):
    kind = rng.randrange(4)
    if kind == 0:
        a = _rand_atom(rng)
        return ax(-1, 1), {-1: a, 1: a}
    if kind == 1:
        return topr(1), {1: top}
    if kind == 2:
        return topr(-1), {-1: bot}
    t = num(rng.randrange(3))
    return rfl(1), {1: eq(t, t)}


def _rand_atom(rng: random.Random) -> Expr:
    kind = rng.randrange(4)
    if kind == 0:
        return R
    if kind == 1:
        return S
    if kind == 2:
        return _px(num(rng.randrange(4)))
    return eq(num(rng.randrange(3)), num(rng.randrange(3)))


def random_proof(rng: random.Random, steps: int = 6):
    """A well-typed (proof, context) pair grown by `steps` random wraps.

    Every context formula is closed. Wraps rebind existing entries, so
    the resulting structure survives normalization meaningfully rather
    than collapsing through vacuous binders.
    """
    p, ctx = _leaf(rng)
    nneg = min([h for h in ctx if h < 0], default=0) - 1
    npos = max([h for h in ctx if h > 0], default=0) + 1
    eigen_ct = 0

    def fresh_neg():
        nonlocal nneg
        h = nneg
        nneg -= 1
        return h

    def fresh_pos():
        nonlocal npos
        h = npos
        npos += 1
        return h

    for _ in range(steps):
        negs = sorted(h for h in ctx if h < 0)
        poss = sorted(h for h in ctx if h > 0)
        options = []
        if negs:
            options += ["negr", "andl_and", "alll_all", "allr_ex", "cut_right"]
        if poss:
            options += ["negl", "andl_or", "alll_ex", "allr_all", "cut_left", "ind"]
        if negs and poss:
            options += ["andl_imp", "andr_and", "andr_imp", "eql"]
        if len(negs) >= 1 and poss:
            options += ["andr_or"]
        kind = rng.choice(options)

        if kind == "negr":
            h = rng.choice(negs)
            m = fresh_pos()
            ctx[m] = neg(ctx[h])
            p = negr(m, h, p)
        elif kind == "negl":
            h = rng.choice(poss)
            m = fresh_neg()
            ctx[m] = neg(ctx[h])
            p = negl(m, h, p)
        elif kind == "andl_and":
            h1 = rng.choice(negs)
            h2 = rng.choice(negs)
            if h1 == h2 and len(negs) > 1:
                h2 = rng.choice([h for h in negs if h != h1])
            if h1 == h2:
                f = conj(ctx[h1], ctx[h1])
            else:
                f = conj(ctx[h1], ctx[h2])
            m = fresh_neg()
            ctx[m] = f
            p = andl(m, h1, h2, p)
        elif kind == "andl_or":
            h1 = rng.choice(poss)
            h2 = rng.choice(poss)
            if h1 == h2 and len(poss) > 1:
                h2 = rng.choice([h for h in poss if h != h1])
            if h1 == h2:
                f = disj(ctx[h1], ctx[h1])
            else:
                f = disj(ctx[h1], ctx[h2])
            m = fresh_pos()
            ctx[m] = f
            p = andl(m, h1, h2, p)
        elif kind == "andl_imp":
            h1 = rng.choice(negs)
            h2 = rng.choice(poss)
            m = fresh_pos()
            ctx[m] = imp(ctx[h1], ctx[h2])
            p = andl(m, h1, h2, p)
        elif kind == "andr_and":
            h1 = rng.choice(poss)
            g = rng.choice(negs)
            a2 = fresh_pos()
            m = fresh_pos()
            ctx[m] = conj(ctx[h1], ctx[g])
            p = andr(m, h1, p, a2, ax(g, a2))
        elif kind == "andr_or":
            h1 = rng.choice(negs)
            g = rng.choice(poss)
            a2 = fresh_neg()
            m = fresh_neg()
            ctx[m] = disj(ctx[h1], ctx[g])
            p = andr(m, h1, p, a2, ax(a2, g))
        elif kind == "andr_imp":
            h1 = rng.choice(poss)
            g = rng.choice(poss)
            a2 = fresh_neg()
            m = fresh_neg()
            ctx[m] = imp(ctx[h1], ctx[g])
            p = andr(m, h1, p, a2, ax(a2, g))
        elif kind == "alll_all" or kind == "alll_ex":
            h = rng.choice(negs if kind == "alll_all" else poss)
            z = var("z", nat)
            m = fresh_neg() if kind == "alll_all" else fresh_pos()
            body = abs_(z, ctx[h])
            ctx[m] = app(
                const("all" if kind == "alll_all" else "ex", arrow(arrow(nat, o), o)),
                body,
            )
            p = alll(m, num(rng.randrange(3)), h, p)
        elif kind == "allr_all" or kind == "allr_ex":
            h = rng.choice(poss if kind == "allr_all" else negs)
            z = var("z", nat)
            yv = var(f"y{eigen_ct}", nat)
            eigen_ct += 1
            m = fresh_pos() if kind == "allr_all" else fresh_neg()
            body = abs_(z, ctx[h])
            ctx[m] = app(
                const("all" if kind == "allr_all" else "ex", arrow(arrow(nat, o), o)),
                body,
            )
            p = allr(m, yv, h, p)
        elif kind == "cut_left":
            h = rng.choice(poss)
            h2 = fresh_neg()
            p = cut(ctx[h], h, p, h2, ax(h2, h))
        elif kind == "cut_right":
            g = rng.choice(negs)
            h1 = fresh_pos()
            p = cut(ctx[g], h1, ax(g, h1), g, p)
        elif kind == "eql":
            h = rng.choice(negs + poss)
            z = var("z", nat)
            e_h = fresh_neg()
            m = fresh_neg() if h < 0 else fresh_pos()
            ctx[e_h] = eq(num(rng.randrange(3)), num(rng.randrange(3)))
            ctx[m] = ctx[h]
            p = eql(e_h, m, rng.random() < 0.5, abs_(z, ctx[h]), h, p)
        else:  # ind
            h = rng.choice(poss)
            z = var("z", nat)
            yv = var(f"y{eigen_ct}", nat)
            eigen_ct += 1
            m = fresh_pos()
            sh = fresh_neg()
            sc = fresh_pos()
            ctx[m] = ctx[h]
            p = ind(
                m,
                abs_(z, ctx[h]),
                num(rng.randrange(3)),
                h,
                p,
                yv,
                sh,
                sc,
                ax(sh, sc),
            )
    return p, ctx
