"""Simply-typed lambda calculus for the object language.

Types and expressions are hash-consed: building the same tree twice
yields the same Python object, so equality is `is`, hashing is identity,
and memo tables keyed by node are cheap. Normalization repeatedly
compares cut formulas, which is what pays for the interning.

Ill-typed applications are representable: the App node simply carries
ty=None. infer_type walks to the offending node and reports it; all
other operations assume well-typed input.
"""
from __future__ import annotations

from typing import Iterable

# ------------------------------------------------------------------ types


class Ty:
    __slots__ = ()


class Base(Ty):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


class Arrow(Ty):
    __slots__ = ("dom", "cod")

    def __init__(self, dom: Ty, cod: Ty):
        self.dom = dom
        self.cod = cod

    def __repr__(self) -> str:
        return f"({self.dom}->{self.cod})"


_pool: dict = {}


def base_type(name: str) -> Base:
    key = ("b", name)
    t = _pool.get(key)
    if t is None:
        t = _pool[key] = Base(name)
    return t


def arrow(dom: Ty, cod: Ty) -> Arrow:
    key = ("t", dom, cod)
    t = _pool.get(key)
    if t is None:
        t = _pool[key] = Arrow(dom, cod)
    return t


def fn(*tys: Ty) -> Ty:
    """Right-associated function type: fn(a, b, c) = a -> (b -> c)."""
    if not tys:
        raise ValueError("fn() needs at least one type")
    out = tys[-1]
    for d in reversed(tys[:-1]):
        out = arrow(d, out)
    return out


o = base_type("o")
i = base_type("i")
nat = base_type("nat")

# ------------------------------------------------------------ expressions

_EMPTY: frozenset = frozenset()


class Expr:
    __slots__ = ("ty", "free_vars")

    def __repr__(self) -> str:
        return _shortstr(self)


class Var(Expr):
    __slots__ = ("name",)


class Const(Expr):
    __slots__ = ("name",)


class App(Expr):
    __slots__ = ("fun", "arg")


class Abs(Expr):
    __slots__ = ("var", "body")


def var(name: str, ty: Ty) -> Var:
    key = ("v", name, ty)
    e = _pool.get(key)
    if e is None:
        e = Var.__new__(Var)
        e.name = name
        e.ty = ty
        e.free_vars = frozenset((e,))
        _pool[key] = e
    return e


def const(name: str, ty: Ty) -> Const:
    key = ("c", name, ty)
    e = _pool.get(key)
    if e is None:
        e = Const.__new__(Const)
        e.name = name
        e.ty = ty
        e.free_vars = _EMPTY
        _pool[key] = e
    return e


def app(fun: Expr, arg: Expr) -> App:
    key = ("a", fun, arg)
    e = _pool.get(key)
    if e is None:
        e = App.__new__(App)
        e.fun = fun
        e.arg = arg
        fty = fun.ty
        if type(fty) is Arrow and arg.ty is fty.dom:
            e.ty = fty.cod
        else:
            e.ty = None
        ffv = fun.free_vars
        afv = arg.free_vars
        e.free_vars = afv if not ffv else (ffv if not afv else ffv | afv)
        _pool[key] = e
    return e


def apps(fun: Expr, *args: Expr) -> Expr:
    for a in args:
        fun = app(fun, a)
    return fun


def abs_(v: Var, body: Expr) -> Abs:
    key = ("l", v, body)
    e = _pool.get(key)
    if e is None:
        e = Abs.__new__(Abs)
        e.var = v
        e.body = body
        e.ty = arrow(v.ty, body.ty) if body.ty is not None else None
        bfv = body.free_vars
        e.free_vars = bfv - v.free_vars if v in bfv else bfv
        _pool[key] = e
    return e


# ------------------------------------------------------------- operations


class TypeMismatch(Exception):
    """An application whose argument type does not fit the arrow domain."""

    def __init__(self, node: Expr, msg: str):
        super().__init__(msg)
        self.node = node


def infer_type(e: Expr) -> Ty:
    if e.ty is not None:
        return e.ty
    # Walk to the deepest ill-typed application and report it.
    t = type(e)
    if t is App:
        if e.fun.ty is None:
            return infer_type(e.fun)
        if e.arg.ty is None:
            return infer_type(e.arg)
        fty = e.fun.ty
        if type(fty) is not Arrow:
            raise TypeMismatch(e, f"not a function: {_shortstr(e.fun)} : {fty}")
        raise TypeMismatch(
            e,
            f"argument {_shortstr(e.arg)} : {e.arg.ty} does not match domain {fty.dom}",
        )
    if t is Abs:
        return infer_type(e.body)
    raise TypeMismatch(e, "ill-typed expression")


def free_expr_vars(e: Expr) -> frozenset:
    return e.free_vars


def fresh_variant(v: Var, avoid: Iterable[Var]) -> Var:
    """A variable with v's type whose name collides with nothing in avoid."""
    names = {w.name for w in avoid}
    if v.name not in names:
        return v
    k = 1
    while f"{v.name}_{k}" in names:
        k += 1
    return var(f"{v.name}_{k}", v.ty)


def subst_apply(e: Expr, sub: dict) -> Expr:
    """Capture-avoiding simultaneous substitution {Var: Expr}."""
    if not sub:
        return e
    sub = {v: t for v, t in sub.items() if t is not v}
    if not sub:
        return e
    return _subst(e, sub)


def _subst(e: Expr, sub: dict) -> Expr:
    if e.free_vars.isdisjoint(sub):
        return e
    t = type(e)
    if t is Var:
        return sub.get(e, e)
    if t is App:
        return app(_subst(e.fun, sub), _subst(e.arg, sub))
    # Abs; Const is unreachable (no free vars).
    x = e.var
    body = e.body
    sub2 = {v: s for v, s in sub.items() if v is not x and v in body.free_vars}
    if not sub2:
        return e
    if any(x in s.free_vars for s in sub2.values()):
        avoid = set(body.free_vars)
        for s in sub2.values():
            avoid |= s.free_vars
        nx = fresh_variant(x, avoid)
        sub2[x] = nx
        return abs_(nx, _subst(body, sub2))
    return abs_(x, _subst(body, sub2))


_nf_memo: dict = {}


def beta_normalize(e: Expr) -> Expr:
    """Beta-normal form. Well-typed input, so this terminates."""
    r = _nf_memo.get(e)
    if r is not None:
        return r
    t = type(e)
    if t is Var or t is Const:
        r = e
    elif t is App:
        f = beta_normalize(e.fun)
        if type(f) is Abs:
            a = beta_normalize(e.arg)
            b = f.body if f.var is a else subst_apply(f.body, {f.var: a})
            r = beta_normalize(b)
        else:
            r = app(f, beta_normalize(e.arg))
    else:
        r = abs_(e.var, beta_normalize(e.body))
    _nf_memo[e] = r
    return r


_canon_memo: dict = {}


def alpha_canon(e: Expr) -> Expr:
    """Rename bound variables to canonical depth-indexed names.

    Two expressions are alpha-equal iff their canon forms are the same
    object. The % prefix cannot appear in parsed identifiers, so canon
    names never collide with user variables.
    """
    r = _canon_memo.get(e)
    if r is None:
        r = _canon(e, 0, None)
        _canon_memo[e] = r
    return r


def _canon(e: Expr, depth: int, env: dict | None) -> Expr:
    t = type(e)
    if t is Var:
        if env is not None:
            return env.get(e, e)
        return e
    if t is Const:
        return e
    if t is App:
        return app(_canon(e.fun, depth, env), _canon(e.arg, depth, env))
    x = e.var
    nx = var(f"%{depth}", x.ty)
    env2 = dict(env) if env else {}
    env2[x] = nx
    return abs_(nx, _canon(e.body, depth + 1, env2))


def alpha_beta_eq(a: Expr, b: Expr) -> bool:
    if a is b:
        return True
    return alpha_canon(beta_normalize(a)) is alpha_canon(beta_normalize(b))


def _shortstr(e: Expr, depth: int = 12) -> str:
    t = type(e)
    if t is Var or t is Const:
        return e.name
    if depth <= 0:
        return "..."
    if t is App:
        spine = []
        while type(e) is App and depth > 0:
            spine.append(e.arg)
            e = e.fun
            depth -= 1
        head = _shortstr(e, depth)
        args = " ".join(_shortstr(a, depth) for a in reversed(spine))
        return f"({head} {args})"
    return f"(lam {e.var.name} {_shortstr(e.body, depth - 1)})"
