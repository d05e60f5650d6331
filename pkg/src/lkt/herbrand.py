"""Herbrand instance extraction and ground validation.

For a proof whose cut formulas are all quantifier-free, the terms fed
into the universal antecedent and existential succedent entries of the
end sequent determine a valid quantifier-free approximation: each
tracked entry is replaced by its set of full instantiations. Validity
of the resulting ground sequent is decided by truth-table enumeration
when few atoms are involved and by a memoized backward sequent search
otherwise.
"""
from __future__ import annotations

from .terms import Expr, beta_normalize
from .formulas import instantiate_block, quantifier_free, split, top, bot, weak_block_len
from .proofs import (
    AllL,
    AllR,
    AndL,
    AndR,
    Ax,
    Cut,
    Eql,
    Ind,
    Proof,
    Rfl,
    TopR,
    iter_nodes,
)
from .typecheck import Sequent
from .deepstack import run_deep


class HerbrandError(Exception):
    pass


class QuantifiedCut(HerbrandError):
    """A cut on a quantified formula, or an induction node; instance
    extraction requires these to be gone."""


class EqualityPresent(HerbrandError):
    """Ground validation treats atoms as independent; equations are
    not supported."""


class NotQuantifierFree(HerbrandError):
    pass


def extract_instances(p: Proof, ctx: dict) -> dict:
    """Instance vectors per tracked end-sequent entry.

    Tracked entries are antecedent formulas with a universal prefix and
    succedent formulas with an existential prefix. Only vectors that
    exhaust the prefix are collected; a partially instantiated chain
    contributes nothing."""
    for node in iter_nodes(p):
        t = type(node)
        if t is Cut and not quantifier_free(node.formula):
            raise QuantifiedCut(f"cut on quantified formula {node.formula}")
        if t is Ind:
            raise QuantifiedCut("induction node present")

    out: dict = {}
    root_env: dict = {}
    for h, f in ctx.items():
        k = weak_block_len(beta_normalize(f), h > 0)
        if k >= 1:
            root_env[h] = (h, (), k)
            out[h] = set()

    def walk(q: Proof, env: dict) -> None:
        t = type(q)
        if t is Ax or t is TopR or t is Rfl:
            return
        if t is AllL:
            env2 = dict(env)
            if q.main in env:
                root, vec, rem = env[q.main]
                vec2 = vec + (q.instance,)
                if rem == 1:
                    out[root].add(vec2)
                    env2.pop(q.aux, None)
                else:
                    env2[q.aux] = (root, vec2, rem - 1)
            else:
                env2.pop(q.aux, None)
            walk(q.sub, env2)
            return
        if t is Cut:
            e1 = dict(env)
            e1.pop(q.h1, None)
            walk(q.left, e1)
            e2 = dict(env)
            e2.pop(q.h2, None)
            walk(q.right, e2)
            return
        if t is AndR:
            e1 = dict(env)
            e1.pop(q.aux1, None)
            walk(q.left, e1)
            e2 = dict(env)
            e2.pop(q.aux2, None)
            walk(q.right, e2)
            return
        if t is AndL:
            e = dict(env)
            e.pop(q.aux1, None)
            e.pop(q.aux2, None)
            walk(q.sub, e)
            return
        # NegL, NegR, AllR, Eql: one binder, one child
        e = dict(env)
        e.pop(q.aux, None)
        walk(q.sub, e)

    run_deep(walk, p, root_env)
    return out


def herbrand_sequent(p: Proof, ctx: dict) -> Sequent:
    """The quantifier-free end sequent induced by the extracted
    instances. Untracked entries are kept as they are; tracked entries
    contribute one instantiation per vector."""
    inst = extract_instances(p, ctx)
    ant: list = []
    suc: list = []
    for h, f in ctx.items():
        fb = beta_normalize(f)
        side = ant if h < 0 else suc
        if h in inst:
            for vec in inst[h]:
                side.append(instantiate_block(fb, vec))
        else:
            side.append(fb)
    return Sequent(ant, suc)


ENUM_ATOM_LIMIT = 14


def _collect_atoms(f: Expr, atoms: set) -> None:
    tag = split(f)
    k = tag[0]
    if k == "atom":
        atoms.add(f)
    elif k == "eq":
        raise EqualityPresent(f"equation {f} in ground sequent")
    elif k in ("and", "or", "imp"):
        _collect_atoms(tag[1], atoms)
        _collect_atoms(tag[2], atoms)
    elif k == "not":
        _collect_atoms(tag[1], atoms)
    elif k in ("top", "bot"):
        pass
    else:
        raise NotQuantifierFree(f"quantifier in {f}")


def _eval(f: Expr, env: dict) -> bool:
    tag = split(f)
    k = tag[0]
    if k == "atom":
        return env[f]
    if k == "and":
        return _eval(tag[1], env) and _eval(tag[2], env)
    if k == "or":
        return _eval(tag[1], env) or _eval(tag[2], env)
    if k == "imp":
        return not _eval(tag[1], env) or _eval(tag[2], env)
    if k == "not":
        return not _eval(tag[1], env)
    return k == "top"


def _search_valid(ant: frozenset, suc: frozenset, memo: dict) -> bool:
    key = (ant, suc)
    hit = memo.get(key)
    if hit is not None:
        return hit

    a = set(ant)
    s = set(suc)
    # saturate non-branching steps
    changed = True
    while changed:
        changed = False
        for f in list(a):
            tag = split(f)
            k = tag[0]
            if k == "and":
                a.discard(f)
                a.add(tag[1])
                a.add(tag[2])
                changed = True
            elif k == "not":
                a.discard(f)
                s.add(tag[1])
                changed = True
            elif k == "top":
                a.discard(f)
                changed = True
        for f in list(s):
            tag = split(f)
            k = tag[0]
            if k == "or":
                s.discard(f)
                s.add(tag[1])
                s.add(tag[2])
                changed = True
            elif k == "imp":
                s.discard(f)
                a.add(tag[1])
                s.add(tag[2])
                changed = True
            elif k == "not":
                s.discard(f)
                a.add(tag[1])
                changed = True
            elif k == "bot":
                s.discard(f)
                changed = True

    if (a & s) or (bot in a) or (top in s):
        memo[key] = True
        return True

    betas = []
    for f in a:
        k = split(f)[0]
        if k == "or" or k == "imp":
            betas.append((f, True))
    for f in s:
        if split(f)[0] == "and":
            betas.append((f, False))
    if not betas:
        memo[key] = False
        return False

    # prefer an antecedent implication whose premise is already present:
    # its first branch closes immediately, keeping chains linear
    pick = None
    for f, in_ant in betas:
        tag = split(f)
        if in_ant and tag[0] == "imp" and tag[1] in a:
            pick = (f, in_ant)
            break
    if pick is None:
        pick = betas[0]

    f, in_ant = pick
    tag = split(f)
    if in_ant:
        if tag[0] == "imp":
            b1 = _search_valid(frozenset(a - {f}), frozenset(s | {tag[1]}), memo)
            ok = b1 and _search_valid(
                frozenset((a - {f}) | {tag[2]}), frozenset(s), memo
            )
        else:  # or
            ok = _search_valid(
                frozenset((a - {f}) | {tag[1]}), frozenset(s), memo
            ) and _search_valid(frozenset((a - {f}) | {tag[2]}), frozenset(s), memo)
    else:  # and in succedent
        ok = _search_valid(
            frozenset(a), frozenset((s - {f}) | {tag[1]}), memo
        ) and _search_valid(frozenset(a), frozenset((s - {f}) | {tag[2]}), memo)
    memo[key] = ok
    return ok


def validate_ground(seq: Sequent) -> bool:
    """Decide a quantifier-free, equation-free sequent over atoms
    treated as independent booleans."""
    ants = list(seq.ant)
    sucs = list(seq.suc)
    atoms: set = set()
    for f in ants + sucs:
        _collect_atoms(f, atoms)
    atom_list = sorted(atoms, key=str)
    if len(atom_list) <= ENUM_ATOM_LIMIT:
        n = len(atom_list)
        for bits in range(1 << n):
            env = {atom_list[i]: bool(bits >> i & 1) for i in range(n)}
            if all(_eval(f, env) for f in ants) and not any(
                _eval(f, env) for f in sucs
            ):
                return False
        return True
    return run_deep(
        _search_valid, frozenset(ants), frozenset(sucs), {}
    )
