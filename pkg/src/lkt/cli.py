"""Command line front end.

Subcommands read a proof document from a file argument or stdin and
write results to stdout, so they compose as pipelines:

    lkt gen linear_cut 4 | lkt normalize --policy until-qfree | lkt herbrand

Failures print one line, `error: <kind>: <message>`, to stderr and
exit 1.
"""

from __future__ import annotations

import argparse
import sys

from .bench import ENGINES, run_grid, write_csv
from .eqelim import PredicateEquation, UnsupportedShape, atomize_eqls
from .families import FAMILIES
from .herbrand import HerbrandError, herbrand_sequent, validate_ground
from .induction import StuckTerm, eliminate_inductions
from .lk import UnsupportedNode, gentzen_eliminate, of_tree, seq_of_ctx, to_tree
from .normalize import DEFAULT_BUDGET, BudgetExhausted, Policy, normalize
from .proofs import cut_count
from .serialize import (
    ParseError,
    SerializeError,
    parse_document,
    print_document,
    print_expr,
)
from .terms import TypeMismatch
from .typecheck import ProofTypeError, check, end_sequent

_POLICIES = {
    "full": Policy.FULL,
    "until-atomic": Policy.UNTIL_ATOMIC,
    "until-qfree": Policy.UNTIL_QFREE,
}

_KINDS = (
    (ParseError, "parse"),
    (ProofTypeError, "type"),
    (TypeMismatch, "type"),
    (BudgetExhausted, "budget"),
    (StuckTerm, "stuck"),
    (UnsupportedNode, "unsupported"),
    (UnsupportedShape, "unsupported"),
    (PredicateEquation, "unsupported"),
    (HerbrandError, "herbrand"),
    (SerializeError, "serialize"),
    (OSError, "io"),
    (ValueError, "invalid"),
)


def _read_doc(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = parse_document(text)
    check(doc.proof, doc.ctx)
    return doc


def _print_sequent(seq) -> str:
    ant = " ".join(print_expr(f) for f in seq.ant.elements())
    suc = " ".join(print_expr(f) for f in seq.suc.elements())
    return f"(sequent (ant {ant}) (suc {suc}))"


def _cmd_check(args) -> int:
    doc = _read_doc(args.file)
    print(f"ok: {doc.proof.size} nodes, {cut_count(doc.proof)} cuts")
    return 0


def _cmd_normalize(args) -> int:
    doc = _read_doc(args.file)
    q = normalize(doc.proof, _POLICIES[args.policy], args.budget)
    sys.stdout.write(print_document(q, doc.ctx))
    return 0


def _cmd_indelim(args) -> int:
    doc = _read_doc(args.file)
    q = eliminate_inductions(doc.proof, doc.ctx, budget=args.budget)
    sys.stdout.write(print_document(q, doc.ctx))
    return 0


def _cmd_atomize(args) -> int:
    doc = _read_doc(args.file)
    q = atomize_eqls(doc.proof, doc.ctx)
    sys.stdout.write(print_document(q, doc.ctx))
    return 0


def _cmd_herbrand(args) -> int:
    doc = _read_doc(args.file)
    seq = herbrand_sequent(doc.proof, doc.ctx)
    validate_ground(seq)
    print(_print_sequent(seq))
    return 0


def _cmd_gen(args) -> int:
    if args.family not in FAMILIES:
        raise ValueError(f"unknown family {args.family!r}")
    p, ctx = FAMILIES[args.family](args.n)
    sys.stdout.write(print_document(p, ctx))
    return 0


def _parse_range(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    return [int(text)]


def _cmd_bench(args) -> int:
    families = args.families.split(",")
    engines = args.engines.split(",")
    for e in engines:
        if e not in ENGINES:
            raise ValueError(f"unknown engine {e!r}")
    rows = run_grid(
        families,
        _parse_range(args.n),
        engines,
        budget=args.budget,
        warmups=args.warmups,
        repeats=args.repeats,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    return 0


def _diff_one(p, ctx, label: str) -> bool:
    """Both engines on one input: end sequents must agree and both
    Herbrand sequents must validate."""
    want = end_sequent(ctx)
    nq = normalize(p, Policy.UNTIL_QFREE)
    check(nq, ctx)
    h1 = herbrand_sequent(nq, ctx)
    validate_ground(h1)
    t = gentzen_eliminate(to_tree(p, ctx))
    if t.has_cut:
        print(f"{label}: mismatch: tree result keeps a cut")
        return False
    if not (t.seq == seq_of_ctx(ctx)):
        print(f"{label}: mismatch: tree concludes {t.seq!r}")
        return False
    q, qctx = of_tree(t)
    check(q, qctx)
    if end_sequent(qctx) != want:
        print(f"{label}: mismatch: reread term concludes a different sequent")
        return False
    h2 = herbrand_sequent(q, qctx)
    validate_ground(h2)
    print(f"{label}: ok: term {nq.size} nodes, tree {t.size} nodes")
    return True


def _cmd_diff(args) -> int:
    if args.file is not None:
        doc = _read_doc(args.file)
        return 0 if _diff_one(doc.proof, doc.ctx, args.file) else 2
    families = args.families.split(",")
    bad = 0
    for family in families:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        for n in _parse_range(args.n):
            p, ctx = FAMILIES[family](n)
            if not _diff_one(p, ctx, f"{family} {n}"):
                bad += 1
    return 2 if bad else 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lkt")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(p):
        p.add_argument("file", nargs="?", default="-", help="proof document, - for stdin")
        return p

    def with_budget(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        return p

    with_file(sub.add_parser("check", help="parse and type-check a document"))

    p = with_budget(with_file(sub.add_parser("normalize", help="eliminate cuts")))
    p.add_argument("--policy", choices=sorted(_POLICIES), default="full")

    with_budget(with_file(sub.add_parser("indelim", help="unfold inductions")))
    with_file(sub.add_parser("atomize", help="reduce equality steps to atomic ones"))
    with_file(sub.add_parser("herbrand", help="extract and validate the instance sequent"))

    p = sub.add_parser("gen", help="emit a generator family instance")
    p.add_argument("family", help="one of: " + ", ".join(sorted(FAMILIES)))
    p.add_argument("n", type=int)

    p = sub.add_parser("bench", help="time engines over a family grid, emit CSV")
    p.add_argument("--families", default="linear,linear_cut,linear_acnf,square_diagonal,square_cut")
    p.add_argument("--n", default="0..8")
    p.add_argument("--engines", default="lkt-full,lkt-atomic,lkt-qfree,tree")
    p.add_argument("--out", default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--warmups", type=int, default=3)
    p.add_argument("--repeats", type=int, default=5)

    p = sub.add_parser("diff", help="cross-check both engines on the same inputs")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--families", default="linear,linear_cut,linear_acnf,square_diagonal,square_cut")
    p.add_argument("--n", default="0..6")
    return ap


_COMMANDS = {
    "check": _cmd_check,
    "normalize": _cmd_normalize,
    "indelim": _cmd_indelim,
    "atomize": _cmd_atomize,
    "herbrand": _cmd_herbrand,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "diff": _cmd_diff,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except tuple(k for k, _ in _KINDS) as exc:
        for klass, kind in _KINDS:
            if isinstance(exc, klass):
                print(f"error: {kind}: {exc}", file=sys.stderr)
                break
        return 1


if __name__ == "__main__":
    sys.exit(main())
