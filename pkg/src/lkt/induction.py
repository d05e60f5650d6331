"""Unfolding induction nodes over concrete numerals.

An induction at successor target s(t) becomes a cut: the smaller
induction at t on one side, the step instantiated at t on the other.
At zero it collapses to the base. Targets that are not constructor
terms are first rewritten to constructor form using universally closed
equations from the context (the recursion equations of the defined
function symbols), with the rewrite justified inside the proof by a
spliced chain of instantiation and equality steps.

eliminate_inductions alternates full normalization with one unfolding
pass until nothing changes. Inductions whose targets stay out of
constructor form (a variable target, or a function the equations do
not reduce) are left in place.
"""
from __future__ import annotations

from .terms import (
    App,
    Const,
    Expr,
    Var,
    abs_,
    app,
    beta_normalize,
    fresh_variant,
    subst_apply,
    var,
)
from .formulas import split, strip_sucs, suc, zero
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
    proof_subst,
    rename_hyp,
)
from .normalize import DEFAULT_BUDGET, Policy, normalize
from .deepstack import run_deep


class StuckTerm(Exception):
    """A target that cannot be brought to constructor form."""

    def __init__(self, term: Expr, msg: str):
        super().__init__(msg)
        self.term = term


class Rule:
    """One oriented rewrite rule all x1..xk (lhs = rhs)."""

    __slots__ = ("hyp", "vars", "lhs", "rhs")

    def __init__(self, hyp: int, vars_, lhs: Expr, rhs: Expr):
        self.hyp = hyp
        self.vars = tuple(vars_)
        self.lhs = lhs
        self.rhs = rhs

    def __repr__(self) -> str:
        vs = " ".join(v.name for v in self.vars)
        return f"[{self.hyp}] {vs}: {self.lhs} -> {self.rhs}"


def rules_of_context(ctx: dict) -> list:
    """Universally closed equations among the antecedent entries, in
    hypothesis order, oriented left to right as written."""
    out = []
    for h in sorted(ctx, reverse=True):
        if h >= 0:
            continue
        f = beta_normalize(ctx[h])
        vars_ = []
        while True:
            tag = split(f)
            if tag[0] == "all" and type(tag[1]).__name__ == "Abs":
                lam = tag[1]
                vars_.append(lam.var)
                f = lam.body
                continue
            break
        if tag[0] == "eq":
            out.append(Rule(h, vars_, tag[1], tag[2]))
    return out


def _match(pat: Expr, t: Expr, binding: dict, pat_vars) -> bool:
    if type(pat) is Var and pat in pat_vars:
        seen = binding.get(pat)
        if seen is None:
            binding[pat] = t
            return True
        return seen is t
    if pat is t:
        return True
    tp = type(pat)
    if tp is not type(t):
        return False
    if tp is App:
        return _match(pat.fun, t.fun, binding, pat_vars) and _match(
            pat.arg, t.arg, binding, pat_vars
        )
    return False


def _find_redex(t: Expr, rules):
    """Innermost-leftmost redex: (path, rule, binding) or None.

    The path is a string of 'f'/'a' steps into App nodes. Lambda bodies
    are not searched; rewrite targets are first-order terms.
    """
    if type(t) is App:
        hit = _find_redex(t.fun, rules)
        if hit is not None:
            return ("f" + hit[0], hit[1], hit[2])
        hit = _find_redex(t.arg, rules)
        if hit is not None:
            return ("a" + hit[0], hit[1], hit[2])
    for r in rules:
        binding: dict = {}
        if _match(r.lhs, t, binding, set(r.vars)):
            return ("", r, binding)
    return None


def _replace(t: Expr, path: str, new: Expr) -> Expr:
    if not path:
        return new
    if path[0] == "f":
        return app(_replace(t.fun, path[1:], new), t.arg)
    return app(t.fun, _replace(t.arg, path[1:], new))


def rewrite_trace(t: Expr, rules, limit: int = 100_000):
    """Normal form of t under the rules plus the step trace.

    Each step records (term-before, path, rule, binding)."""
    steps = []
    while True:
        hit = _find_redex(t, rules)
        if hit is None:
            return t, steps
        if len(steps) >= limit:
            raise StuckTerm(t, f"rewriting exceeded {limit} steps")
        path, r, binding = hit
        steps.append((t, path, r, binding))
        t = _replace(t, path, subst_apply(r.rhs, binding))


def constructor_normal(t: Expr, rules, limit: int = 100_000) -> Expr:
    return rewrite_trace(t, rules, limit)[0]


def is_constructor_form(t: Expr) -> bool:
    _, core = strip_sucs(t)
    return core is zero or type(core) is Var


def unfold_once(q: Ind) -> Proof:
    """One unfolding of an induction whose target starts with a
    constructor; the caller guarantees it does."""
    t = beta_normalize(q.target)
    if t is zero:
        return rename_hyp(q.base, q.base_aux, q.main)
    # t = s(t1)
    t1 = t.arg
    smaller = ind(
        q.main,
        q.motive,
        t1,
        q.base_aux,
        q.base,
        q.eigen,
        q.step_hyp,
        q.step_concl,
        q.step,
    )
    step_t = rename_hyp(
        proof_subst(q.step, {q.eigen: t1}), q.step_concl, q.main
    )
    phi_t1 = beta_normalize(app(q.motive, t1))
    return cut(phi_t1, q.main, smaller, q.step_hyp, step_t)


def _rewrite_splice(q: Ind, rules, avoid_mask: int) -> Proof:
    """Replace an induction at a non-constructor target with one at its
    constructor normal form, justified by equality steps."""
    t0 = beta_normalize(q.target)
    t_nf, steps = rewrite_trace(t0, rules)
    if not steps:
        raise StuckTerm(t0, f"target {t0} has no constructor head")
    mask = avoid_mask | q.fh | hbit(q.main)
    for r in rules:
        mask |= hbit(r.hyp)
    motive = q.motive
    hB = fresh_from_mask(mask, False)
    mask |= hbit(hB)

    zv = var("z", t0.ty)

    def chain(i: int, g_cur: int) -> Proof:
        nonlocal mask
        if i == len(steps):
            return ax(hB, g_cur)
        t_i, path, r, binding = steps[i]
        e_names = []
        for _ in r.vars:
            e = fresh_from_mask(mask, False)
            mask |= hbit(e)
            e_names.append(e)
        z = fresh_variant(zv, t_i.free_vars | motive.free_vars)
        ctx_fn = abs_(z, beta_normalize(app(motive, _replace(t_i, path, z))))
        g_next = fresh_from_mask(mask, True)
        mask |= hbit(g_next)
        eq_h = e_names[-1] if e_names else r.hyp
        body = eql(eq_h, g_cur, True, ctx_fn, g_next, chain(i + 1, g_next))
        # wrap the instantiation chain outermost-in
        node = body
        for j in range(len(r.vars) - 1, -1, -1):
            inst = binding[r.vars[j]]
            d = r.hyp if j == 0 else e_names[j - 1]
            node = alll(d, inst, e_names[j], node)
        return node

    pis = chain(0, q.main)
    new_ind = ind(
        q.main,
        motive,
        t_nf,
        q.base_aux,
        q.base,
        q.eigen,
        q.step_hyp,
        q.step_concl,
        q.step,
    )
    phi_nf = beta_normalize(app(motive, t_nf))
    return cut(phi_nf, q.main, new_ind, hB, pis)


def transform_ind(q: Ind, rules, avoid_mask: int = 0) -> Proof:
    """Unfold one constructor layer, or splice a rewrite to constructor
    form. Raises StuckTerm when neither applies."""
    t = beta_normalize(q.target)
    k, core = strip_sucs(t)
    if k > 0 or core is zero:
        return unfold_once(q)
    if type(core) is Var:
        raise StuckTerm(t, f"target is the variable {core.name}")
    return _rewrite_splice(q, rules, avoid_mask)


def _unfold_pass(p: Proof, rules, avoid_mask: int):
    changed = [False]

    def go(q: Proof) -> Proof:
        t = type(q)
        if t is Ax or t is TopR or t is Rfl:
            return q
        if t is Cut:
            l = go(q.left)
            r = go(q.right)
            if l is q.left and r is q.right:
                return q
            return cut(q.formula, q.h1, l, q.h2, r)
        if t is NegL or t is NegR:
            s = go(q.sub)
            if s is q.sub:
                return q
            return (negl if t is NegL else negr)(q.main, q.aux, s)
        if t is AndL:
            s = go(q.sub)
            if s is q.sub:
                return q
            return andl(q.main, q.aux1, q.aux2, s)
        if t is AndR:
            l = go(q.left)
            r = go(q.right)
            if l is q.left and r is q.right:
                return q
            return andr(q.main, q.aux1, l, q.aux2, r)
        if t is AllL:
            s = go(q.sub)
            if s is q.sub:
                return q
            return alll(q.main, q.instance, q.aux, s)
        if t is AllR:
            s = go(q.sub)
            if s is q.sub:
                return q
            return allr(q.main, q.eigen, q.aux, s)
        if t is Eql:
            s = go(q.sub)
            if s is q.sub:
                return q
            return eql(q.eq_hyp, q.main, q.left_to_right, q.context, q.aux, s)
        # Ind: transform children first, then this node
        base = go(q.base)
        step = go(q.step)
        if base is not q.base or step is not q.step:
            q = ind(
                q.main,
                q.motive,
                q.target,
                q.base_aux,
                base,
                q.eigen,
                q.step_hyp,
                q.step_concl,
                step,
            )
        try:
            r = transform_ind(q, rules, avoid_mask)
        except StuckTerm:
            return q
        changed[0] = True
        return r

    return go(p), changed[0]


def eliminate_inductions(
    p: Proof,
    ctx: dict,
    rules=None,
    budget: int = DEFAULT_BUDGET,
) -> Proof:
    """Normalize and unfold inductions to a fixpoint.

    rules default to the universally closed equations found in ctx.
    Inductions that stay stuck survive in the result, which is fully
    normalized either way."""
    if rules is None:
        rules = rules_of_context(ctx)
    avoid = hyp_mask(ctx.keys())

    def loop(p: Proof) -> Proof:
        while True:
            p = normalize(p, Policy.FULL, budget)
            p, changed = _unfold_pass(p, rules, avoid)
            if not changed:
                return p

    return run_deep(loop, p)
