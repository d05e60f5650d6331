"""Timing harness over the generator families.

One cell is (family, n, engine). Generation and, for the tree engine,
translation happen before the clock starts; the timed region is the
elimination call alone. Each cell runs a few warmups and reports the
minimum of the measured runs, which is the stable statistic at the
microsecond scales the fast engines reach.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .families import FAMILIES
from .induction import StuckTerm, eliminate_inductions
from .lk import UnsupportedNode, gentzen_eliminate, to_tree, tree_cut_count, tree_size
from .normalize import DEFAULT_BUDGET, BudgetExhausted, Policy, normalize
from .proofs import cut_count

ENGINES = ("lkt-full", "lkt-atomic", "lkt-qfree", "tree", "ind-elim")

_POLICY = {
    "lkt-full": Policy.FULL,
    "lkt-atomic": Policy.UNTIL_ATOMIC,
    "lkt-qfree": Policy.UNTIL_QFREE,
}

CSV_HEADER = "family,n,engine,wallNanos,inputSize,outputSize,cutCountOut,status"


@dataclass
class BenchRow:
    family: str
    n: int
    engine: str
    wall_nanos: int
    input_size: int
    output_size: int
    cut_count_out: int
    status: str

    def csv(self) -> str:
        return (
            f"{self.family},{self.n},{self.engine},{self.wall_nanos},"
            f"{self.input_size},{self.output_size},{self.cut_count_out},{self.status}"
        )


def run_cell(
    family: str,
    n: int,
    engine: str,
    budget: int = DEFAULT_BUDGET,
    warmups: int = 3,
    repeats: int = 5,
) -> BenchRow:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    p, ctx = FAMILIES[family](n)
    row = BenchRow(family, n, engine, 0, 0, 0, 0, "ok")
    try:
        # preparation stays outside the timing loop but inside the
        # failure net, so an untranslatable input becomes an error row
        if engine == "tree":
            task_input = to_tree(p, ctx)
            task = lambda: gentzen_eliminate(task_input)
            size_of, cuts_of = tree_size, tree_cut_count
            row.input_size = tree_size(task_input)
        else:
            row.input_size = p.size
            size_of, cuts_of = lambda q: q.size, cut_count
            if engine == "ind-elim":
                task = lambda: eliminate_inductions(p, ctx, budget=budget)
            else:
                policy = _POLICY[engine]
                task = lambda: normalize(p, policy, budget)
        for _ in range(warmups):
            out = task()
        best = None
        for _ in range(repeats):
            t0 = time.perf_counter_ns()
            out = task()
            dt = time.perf_counter_ns() - t0
            if best is None or dt < best:
                best = dt
        row.wall_nanos = max(best, 1)
        row.output_size = size_of(out)
        row.cut_count_out = cuts_of(out)
    except BudgetExhausted:
        row.status = "budget"
    except (UnsupportedNode, StuckTerm):
        row.status = "error"
    return row


def run_grid(
    families,
    ns,
    engines,
    budget: int = DEFAULT_BUDGET,
    warmups: int = 3,
    repeats: int = 5,
):
    """Rows in deterministic (family, n, engine) order. Cells run
    sequentially so no cell's timing sees another's cache pressure."""
    for family in families:
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        for n in ns:
            for engine in engines:
                yield run_cell(family, n, engine, budget, warmups, repeats)


def write_csv(rows, out) -> None:
    out.write(CSV_HEADER + "\n")
    for row in rows:
        out.write(row.csv() + "\n")
