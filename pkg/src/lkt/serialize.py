"""Text format for proofs, contexts and whole proof documents.

Everything is an s-expression. Atoms are runs of characters other than
whitespace, parentheses and the comment character ';' (a comment runs to
end of line). Hypotheses are nonzero signed decimal integers. Terms use
a prefix syntax with a little sugar:

    (imp (P 0) (all x (P (s x))))      binders default to type nat
    (all (x i) (Q x))                  explicit binder type
    (lam (y (-> nat o)) (y 2))         numerals abbreviate s^k(0)

Proof nodes are one list per constructor, children in the same order as
the Python builders:

    (ax H H) (top-r H) (rfl H)
    (cut FORMULA H PROOF H PROOF)
    (not-l H H PROOF)   (not-r H H PROOF)
    (and-l H H H PROOF) (and-r H H PROOF H PROOF)
    (all-l H TERM H PROOF) (all-r H BINDER H PROOF)
    (eql H H lr|rl CONTEXT H PROOF)
    (ind H MOTIVE TARGET H PROOF BINDER H H PROOF)

A document bundles a signature (custom base types and constants), the
local context, and one proof:

    (document
      (signature (const P (-> nat o)))
      (context (-1 (P 0)) (1 (P 2)))
      (proof (ax -1 1)))

parse_document and print_document are inverse up to whitespace; the
printer reconstructs the signature from the constants actually used.
"""

from __future__ import annotations

import re

from .formulas import (
    _is_eq_ty,
    _is_quant_ty,
    all_c,
    allq,
    and_c,
    bot,
    conj,
    disj,
    eq,
    ex_c,
    exq,
    imp,
    imp_c,
    neg,
    not_c,
    num,
    num_of,
    or_c,
    split,
    suc_c,
    top,
    zero,
)
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
    ind,
    negl,
    negr,
    rfl,
    topr,
)
from .terms import (
    Abs,
    App,
    Arrow,
    Base,
    Const,
    Expr,
    Ty,
    TypeMismatch,
    Var,
    abs_,
    app,
    arrow,
    base_type,
    const,
    infer_type,
    nat,
    o,
    var,
)


class ParseError(Exception):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


class SerializeError(Exception):
    """The structure cannot be printed unambiguously."""


# ------------------------------------------------------------------ reader


class _Atom:
    __slots__ = ("text", "line", "col")

    def __init__(self, text: str, line: int, col: int):
        self.text = text
        self.line = line
        self.col = col


class _List:
    __slots__ = ("items", "line", "col")

    def __init__(self, items: list, line: int, col: int):
        self.items = items
        self.line = line
        self.col = col


_TOKEN = re.compile(r"[()]|[^\s();]+")


def tokenize(text: str):
    toks = []
    for ln, linetext in enumerate(text.split("\n"), start=1):
        body = linetext.split(";", 1)[0]
        for m in _TOKEN.finditer(body):
            toks.append((m.group(), ln, m.start() + 1))
    return toks


def _read(toks: list, i: int):
    if i >= len(toks):
        last = toks[-1] if toks else ("", 1, 1)
        raise ParseError("unexpected end of input", last[1], last[2])
    text, ln, col = toks[i]
    if text == "(":
        items = []
        i += 1
        while True:
            if i >= len(toks):
                raise ParseError("unclosed '('", ln, col)
            if toks[i][0] == ")":
                return _List(items, ln, col), i + 1
            node, i = _read(toks, i)
            items.append(node)
    if text == ")":
        raise ParseError("unmatched ')'", ln, col)
    return _Atom(text, ln, col), i + 1


def read_sexpr(text: str) -> _List | _Atom:
    toks = tokenize(text)
    if not toks:
        raise ParseError("empty input", 1, 1)
    node, i = _read(toks, 0)
    if i != len(toks):
        raise ParseError("trailing input after expression", toks[i][1], toks[i][2])
    return node


def _expect_list(node, what: str) -> _List:
    if not isinstance(node, _List):
        raise ParseError(f"expected {what}", node.line, node.col)
    return node


def _expect_atom(node, what: str) -> _Atom:
    if not isinstance(node, _Atom):
        raise ParseError(f"expected {what}", node.line, node.col)
    return node


def _head(node: _List) -> str:
    if node.items and isinstance(node.items[0], _Atom):
        return node.items[0].text
    return ""


def _arity(node: _List, n: int, what: str):
    if len(node.items) != n + 1:
        raise ParseError(
            f"{what} takes {n} arguments, got {len(node.items) - 1}",
            node.line,
            node.col,
        )


# ------------------------------------------------------------------- types

_BUILTIN_TYPES = {"o": o, "i": base_type("i"), "nat": nat}


def parse_ty(node, types: set) -> Ty:
    if isinstance(node, _Atom):
        t = _BUILTIN_TYPES.get(node.text)
        if t is not None:
            return t
        if node.text in types:
            return base_type(node.text)
        raise ParseError(f"undeclared type {node.text!r}", node.line, node.col)
    if _head(node) != "->" or len(node.items) < 3:
        raise ParseError("expected a type", node.line, node.col)
    parts = [parse_ty(it, types) for it in node.items[1:]]
    t = parts[-1]
    for d in reversed(parts[:-1]):
        t = arrow(d, t)
    return t


def print_ty(t: Ty) -> str:
    if isinstance(t, Base):
        return t.name
    parts = []
    while isinstance(t, Arrow):
        parts.append(print_ty(t.dom))
        t = t.cod
    parts.append(print_ty(t))
    return "(-> " + " ".join(parts) + ")"


# ------------------------------------------------------------------- terms

_NUMERAL = re.compile(r"\d+$")
_SIGNED = re.compile(r"-?\d+$")

_BUILTIN_CONSTS = {"top": top, "bot": bot, "s": suc_c}


def _parse_binder(node, types: set):
    if isinstance(node, _Atom):
        _no_numeral_name(node)
        return var(node.text, nat)
    _arity(node, 1, "a typed binder")
    name = _expect_atom(node.items[0], "binder name")
    _no_numeral_name(name)
    return var(name.text, parse_ty(node.items[1], types))


def _no_numeral_name(atom: _Atom):
    if _SIGNED.match(atom.text):
        raise ParseError("numeral cannot be a name", atom.line, atom.col)


def parse_expr(node, env: dict, sig: dict, types: set) -> Expr:
    e = _parse_expr(node, env, sig, types)
    try:
        infer_type(e)
    except TypeMismatch as exc:
        raise ParseError(f"ill-typed term: {exc}", node.line, node.col) from None
    return e


def _parse_expr(node, env: dict, sig: dict, types: set) -> Expr:
    if isinstance(node, _Atom):
        text = node.text
        if _NUMERAL.match(text):
            return num(int(text))
        v = env.get(text)
        if v is not None:
            return v
        c = _BUILTIN_CONSTS.get(text)
        if c is not None:
            return c
        ty = sig.get(text)
        if ty is not None:
            return const(text, ty)
        raise ParseError(f"unbound name {text!r}", node.line, node.col)
    if not node.items:
        raise ParseError("empty application", node.line, node.col)
    head = _head(node)
    args = node.items[1:]
    if head == "lam":
        _arity(node, 2, "lam")
        v = _parse_binder(args[0], types)
        body = _parse_expr(args[1], {**env, v.name: v}, sig, types)
        return abs_(v, body)
    if head in ("and", "or", "imp") and len(args) == 2:
        a = _parse_expr(args[0], env, sig, types)
        b = _parse_expr(args[1], env, sig, types)
        return {"and": conj, "or": disj, "imp": imp}[head](a, b)
    if head == "not" and len(args) == 1:
        return neg(_parse_expr(args[0], env, sig, types))
    if head == "=" and len(args) == 2:
        a = parse_expr(args[0], env, sig, types)
        b = _parse_expr(args[1], env, sig, types)
        return eq(a, b)
    if head in ("all", "ex") and len(args) == 2:
        v = _parse_binder(args[0], types)
        body = _parse_expr(args[1], {**env, v.name: v}, sig, types)
        return (allq if head == "all" else exq)(v, body)
    if head in ("all", "ex") and len(args) == 1:
        # Quantifier applied to an explicit predicate term.
        p = parse_expr(args[0], env, sig, types)
        ty = infer_type(p)
        if not (isinstance(ty, Arrow) and ty.cod is o):
            raise ParseError(
                f"{head} needs a predicate, got type {print_ty(ty)}",
                node.line,
                node.col,
            )
        return app((all_c if head == "all" else ex_c)(ty.dom), p)
    f = _parse_expr(node.items[0], env, sig, types)
    for a in args:
        f = app(f, _parse_expr(a, env, sig, types))
    return f


def print_expr(e: Expr) -> str:
    return _pe(e, {})


def _pe(e: Expr, bound: dict) -> str:
    k = num_of(e)
    if k is not None:
        return str(k)
    t = type(e)
    if t is Var:
        if bound.get(e.name, e) is not e:
            raise SerializeError(f"variable name {e.name!r} is shadowed")
        return e.name
    if t is Const:
        return e.name
    if t is Abs:
        return f"(lam {_pbinder(e.var, bound)} {_pe(e.body, {**bound, e.var.name: e.var})})"
    tag = split(e)
    h = tag[0]
    if h in ("and", "or", "imp", "eq"):
        op = "=" if h == "eq" else h
        return f"({op} {_pe(tag[1], bound)} {_pe(tag[2], bound)})"
    if h == "not":
        return f"(not {_pe(tag[1], bound)})"
    if h in ("all", "ex") and type(tag[1]) is Abs:
        lam = tag[1]
        inner = {**bound, lam.var.name: lam.var}
        return f"({h} {_pbinder(lam.var, bound)} {_pe(lam.body, inner)})"
    if h in ("all", "ex"):
        return f"({h} {_pe(tag[1], bound)})"
    if h in ("top", "bot"):
        return h
    # Plain application spine.
    parts = []
    while type(e) is App:
        parts.append(e.arg)
        e = e.fun
    parts.append(e)
    parts.reverse()
    return "(" + " ".join(_pe(p, bound) for p in parts) + ")"


def _pbinder(v: Var, bound: dict) -> str:
    other = bound.get(v.name)
    if other is not None and other is not v:
        raise SerializeError(f"binder {v.name!r} shadows a distinct variable")
    if v.ty is nat:
        return v.name
    return f"({v.name} {print_ty(v.ty)})"


# ------------------------------------------------------------------- hyps


def parse_hyp(node) -> int:
    atom = _expect_atom(node, "a hypothesis")
    if not _SIGNED.match(atom.text):
        raise ParseError(f"expected a hypothesis, got {atom.text!r}", atom.line, atom.col)
    h = int(atom.text)
    if h == 0:
        raise ParseError("hypothesis 0 is forbidden", atom.line, atom.col)
    return h


# ------------------------------------------------------------------ proofs


def parse_proof(node, env: dict, sig: dict, types: set) -> Proof:
    node = _expect_list(node, "a proof")
    head = _head(node)
    try:
        return _parse_proof(node, head, env, sig, types)
    except ValueError as exc:
        # Builders reject sign and freshness violations.
        raise ParseError(str(exc), node.line, node.col) from None


def _parse_proof(node: _List, head: str, env: dict, sig: dict, types: set) -> Proof:
    a = node.items[1:]
    if head == "ax":
        _arity(node, 2, "ax")
        return ax(parse_hyp(a[0]), parse_hyp(a[1]))
    if head == "top-r":
        _arity(node, 1, "top-r")
        return topr(parse_hyp(a[0]))
    if head == "rfl":
        _arity(node, 1, "rfl")
        return rfl(parse_hyp(a[0]))
    if head == "cut":
        _arity(node, 5, "cut")
        return cut(
            parse_expr(a[0], env, sig, types),
            parse_hyp(a[1]),
            parse_proof(a[2], env, sig, types),
            parse_hyp(a[3]),
            parse_proof(a[4], env, sig, types),
        )
    if head in ("not-l", "not-r"):
        _arity(node, 3, head)
        mk = negl if head == "not-l" else negr
        return mk(parse_hyp(a[0]), parse_hyp(a[1]), parse_proof(a[2], env, sig, types))
    if head == "and-l":
        _arity(node, 4, "and-l")
        return andl(
            parse_hyp(a[0]),
            parse_hyp(a[1]),
            parse_hyp(a[2]),
            parse_proof(a[3], env, sig, types),
        )
    if head == "and-r":
        _arity(node, 5, "and-r")
        return andr(
            parse_hyp(a[0]),
            parse_hyp(a[1]),
            parse_proof(a[2], env, sig, types),
            parse_hyp(a[3]),
            parse_proof(a[4], env, sig, types),
        )
    if head == "all-l":
        _arity(node, 4, "all-l")
        return alll(
            parse_hyp(a[0]),
            parse_expr(a[1], env, sig, types),
            parse_hyp(a[2]),
            parse_proof(a[3], env, sig, types),
        )
    if head == "all-r":
        _arity(node, 4, "all-r")
        v = _parse_binder(a[1], types)
        return allr(
            parse_hyp(a[0]),
            v,
            parse_hyp(a[2]),
            parse_proof(a[3], {**env, v.name: v}, sig, types),
        )
    if head == "eql":
        _arity(node, 6, "eql")
        d = _expect_atom(a[2], "direction lr or rl")
        if d.text not in ("lr", "rl"):
            raise ParseError(f"expected lr or rl, got {d.text!r}", d.line, d.col)
        return eql(
            parse_hyp(a[0]),
            parse_hyp(a[1]),
            d.text == "lr",
            parse_expr(a[3], env, sig, types),
            parse_hyp(a[4]),
            parse_proof(a[5], env, sig, types),
        )
    if head == "ind":
        _arity(node, 9, "ind")
        v = _parse_binder(a[5], types)
        return ind(
            parse_hyp(a[0]),
            parse_expr(a[1], env, sig, types),
            parse_expr(a[2], env, sig, types),
            parse_hyp(a[3]),
            parse_proof(a[4], env, sig, types),
            v,
            parse_hyp(a[6]),
            parse_hyp(a[7]),
            parse_proof(a[8], {**env, v.name: v}, sig, types),
        )
    raise ParseError(f"unknown proof constructor {head!r}", node.line, node.col)


def print_proof(p: Proof, indent: int = 0) -> str:
    return _pp(p, indent, {})


def _pp(p: Proof, ind: int, bound: dict) -> str:
    pad = "  " * ind
    nl = "\n" + "  " * (ind + 1)
    t = type(p)
    if t is Ax:
        return f"{pad}(ax {p.h1} {p.h2})"
    if t is TopR:
        return f"{pad}(top-r {p.h})"
    if t is Rfl:
        return f"{pad}(rfl {p.h})"
    if t is Cut:
        return (
            f"{pad}(cut {_pe(p.formula, bound)} {p.h1}"
            f"\n{_pp(p.left, ind + 1, bound)} {p.h2}"
            f"\n{_pp(p.right, ind + 1, bound)})"
        )
    if t is NegL or t is NegR:
        head = "not-l" if t is NegL else "not-r"
        return f"{pad}({head} {p.main} {p.aux}\n{_pp(p.sub, ind + 1, bound)})"
    if t is AndL:
        return (
            f"{pad}(and-l {p.main} {p.aux1} {p.aux2}"
            f"\n{_pp(p.sub, ind + 1, bound)})"
        )
    if t is AndR:
        return (
            f"{pad}(and-r {p.main} {p.aux1}"
            f"\n{_pp(p.left, ind + 1, bound)} {p.aux2}"
            f"\n{_pp(p.right, ind + 1, bound)})"
        )
    if t is AllL:
        return (
            f"{pad}(all-l {p.main} {_pe(p.instance, bound)} {p.aux}"
            f"\n{_pp(p.sub, ind + 1, bound)})"
        )
    if t is AllR:
        inner = {**bound, p.eigen.name: p.eigen}
        return (
            f"{pad}(all-r {p.main} {_pbinder(p.eigen, bound)} {p.aux}"
            f"\n{_pp(p.sub, ind + 1, inner)})"
        )
    if t is Eql:
        d = "lr" if p.left_to_right else "rl"
        return (
            f"{pad}(eql {p.eq_hyp} {p.main} {d} {_pe(p.context, bound)} {p.aux}"
            f"\n{_pp(p.sub, ind + 1, bound)})"
        )
    if t is Ind:
        inner = {**bound, p.eigen.name: p.eigen}
        return (
            f"{pad}(ind {p.main} {_pe(p.motive, bound)} {_pe(p.target, bound)}"
            f" {p.base_aux}"
            f"\n{_pp(p.base, ind + 1, bound)} {_pbinder(p.eigen, bound)}"
            f" {p.step_hyp} {p.step_concl}"
            f"\n{_pp(p.step, ind + 1, inner)})"
        )
    raise SerializeError(f"cannot print {t.__name__}")


# --------------------------------------------------------------- documents


class Document:
    """A parsed proof file: signature, local context, proof term."""

    __slots__ = ("sig", "types", "ctx", "proof")

    def __init__(self, sig: dict, types: set, ctx: dict, proof: Proof):
        self.sig = sig
        self.types = types
        self.ctx = ctx
        self.proof = proof


def parse_document(text: str) -> Document:
    root = read_sexpr(text)
    root = _expect_list(root, "(document ...)")
    if _head(root) != "document":
        raise ParseError("expected (document ...)", root.line, root.col)
    sig: dict = {}
    types: set = set()
    ctx: dict = {}
    proof = None
    for section in root.items[1:]:
        section = _expect_list(section, "a document section")
        h = _head(section)
        if h == "signature":
            _parse_signature(section, sig, types)
        elif h == "context":
            _parse_context(section, ctx, sig, types)
        elif h == "proof":
            if proof is not None:
                raise ParseError("duplicate proof section", section.line, section.col)
            _arity(section, 1, "proof")
            proof = parse_proof(section.items[1], {}, sig, types)
        else:
            raise ParseError(f"unknown section {h!r}", section.line, section.col)
    if proof is None:
        raise ParseError("document has no proof section", root.line, root.col)
    return Document(sig, types, ctx, proof)


def _parse_signature(section: _List, sig: dict, types: set):
    for decl in section.items[1:]:
        decl = _expect_list(decl, "a declaration")
        h = _head(decl)
        if h == "type":
            _arity(decl, 1, "type")
            name = _expect_atom(decl.items[1], "type name").text
            types.add(name)
        elif h == "const":
            _arity(decl, 2, "const")
            atom = _expect_atom(decl.items[1], "constant name")
            if atom.text in sig:
                raise ParseError(f"duplicate constant {atom.text!r}", atom.line, atom.col)
            sig[atom.text] = parse_ty(decl.items[2], types)
        else:
            raise ParseError(f"unknown declaration {h!r}", decl.line, decl.col)


def _parse_context(section: _List, ctx: dict, sig: dict, types: set):
    for entry in section.items[1:]:
        entry = _expect_list(entry, "a context entry")
        _arity(entry, 1, "a context entry")
        h = parse_hyp(entry.items[0])
        if h in ctx:
            raise ParseError(f"duplicate hypothesis {h}", entry.line, entry.col)
        f = parse_expr(entry.items[1], {}, sig, types)
        ty = infer_type(f)
        if ty is not o:
            raise ParseError(
                f"context formula has type {print_ty(ty)}, expected o",
                entry.items[1].line if isinstance(entry.items[1], _List) else entry.line,
                entry.items[1].col if isinstance(entry.items[1], _List) else entry.col,
            )
        ctx[h] = f


_BUILTIN_NAMES = {"and", "or", "imp", "not", "top", "bot", "all", "ex", "=", "0", "s"}


def _is_builtin_const(e: Const) -> bool:
    """Is e one of the printable builtin constants, at a type the parser
    would reconstruct? all/ex/= are families indexed by an argument type."""
    n = e.name
    if n in ("and", "or", "imp"):
        return e is and_c or e is or_c or e is imp_c
    if n == "not":
        return e is not_c
    if n == "top" or n == "bot":
        return e is top or e is bot
    if n == "0":
        return e is zero
    if n == "s":
        return e is suc_c
    if n == "all" or n == "ex":
        return _is_quant_ty(e.ty)
    return _is_eq_ty(e.ty)


def _used_constants(p: Proof, ctx: dict) -> tuple:
    """Every non-builtin constant and custom base type reachable from the
    context or the proof, with a conflict check on reused names."""
    consts: dict = {}
    types: set = set()

    def note_ty(t: Ty):
        while isinstance(t, Arrow):
            note_ty(t.dom)
            t = t.cod
        if t.name not in ("o", "i", "nat"):
            types.add(t.name)

    def walk(e: Expr):
        t = type(e)
        if t is Const:
            if e.name in _BUILTIN_NAMES:
                if not _is_builtin_const(e):
                    raise SerializeError(
                        f"constant {e.name!r} collides with a builtin"
                    )
                return
            prev = consts.get(e.name)
            if prev is not None and prev is not e.ty:
                raise SerializeError(f"constant {e.name!r} used at two types")
            consts[e.name] = e.ty
            note_ty(e.ty)
        elif t is Var:
            note_ty(e.ty)
        elif t is App:
            walk(e.fun)
            walk(e.arg)
        elif t is Abs:
            note_ty(e.var.ty)
            walk(e.body)

    for f in ctx.values():
        walk(f)
    from .proofs import iter_nodes

    for q in iter_nodes(p):
        tq = type(q)
        if tq is Cut:
            walk(q.formula)
        elif tq is AllL:
            walk(q.instance)
        elif tq is AllR:
            note_ty(q.eigen.ty)
        elif tq is Eql:
            walk(q.context)
        elif tq is Ind:
            walk(q.motive)
            walk(q.target)
            note_ty(q.eigen.ty)
    return consts, types


def print_document(p: Proof, ctx: dict) -> str:
    consts, types = _used_constants(p, ctx)
    lines = ["(document"]
    decls = [f"    (type {n})" for n in sorted(types)]
    decls += [f"    (const {n} {print_ty(t)})" for n, t in sorted(consts.items())]
    if decls:
        lines.append("  (signature")
        lines += decls
        lines[-1] += ")"
    if ctx:
        lines.append("  (context")
        entries = sorted(ctx.items(), key=lambda kv: (kv[0] > 0, abs(kv[0])))
        lines += [f"    ({h} {print_expr(f)})" for h, f in entries]
        lines[-1] += ")"
    lines.append("  (proof")
    lines.append(print_proof(p, 2) + "))")
    return "\n".join(lines) + "\n"
