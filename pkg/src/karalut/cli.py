"""Command-line entry point: ``karalut {gen,mul,verify,model,bench}``.

Exit codes: 0 success, 1 usage or input error, 2 verification or correctness
failure, 3 refused for lack of memory budget.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .bignum import CostLedger, Natural, from_text, to_text
from .cost_model import ModelParams, figure1_curve, rsa_scenario
from .errors import (
    BudgetExceededError,
    ConfigError,
    ParseError,
    TableFormatError,
)
from .strategies import ALGORITHMS, HYBRIDS, describe, multiply
from .table import generate_table, load_table, memory_budget, save_table, verify_table

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_REFUSED = 3

DEFAULT_SEED = 20240601

BENCH_COLUMNS = [
    "algorithm",
    "digits",
    "single_digit_mults",
    "table_lookups",
    "digit_adds",
    "digit_subs",
    "block_adds",
    "block_subs",
    "wall_time_ns",
]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    base: Optional[int] = None
    algorithm: str = "school"
    N: int = 4
    m: Optional[int] = None
    leaf_digits: int = 1
    table_path: Optional[str] = None
    counts: bool = False
    csv_out: Optional[str] = None

    def check(self) -> None:
        if self.algorithm in HYBRIDS and not self.table_path:
            raise UsageError(f"--algo {self.algorithm} requires --table")
        if self.algorithm in ("nblock", "hybrid-nblock") and self.N < 1:
            raise UsageError("--blocks must be >= 1")


def format_number(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{float(x):.6f}"
    if isinstance(x, float):
        return str(int(x)) if x.is_integer() else f"{x:.6f}"
    if x is None:
        return ""
    return str(x)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _str_list(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


# --------------------------------------------------------------------------
# commands


def cmd_gen(args, out: TextIO) -> int:
    budget = args.budget if args.budget is not None else memory_budget()
    try:
        table = generate_table(args.base, args.m, budget=budget)
    except BudgetExceededError as exc:
        print(
            f"refused: base {args.base}, m={args.m} needs {exc.entries:.3e} entries "
            f"({exc.entries:,}), {exc.required_bytes:,} bytes; budget {exc.budget_bytes:,} bytes",
            file=sys.stderr,
        )
        return EXIT_REFUSED
    nbytes = save_table(table, args.out)
    print(f"entries={len(table.entries)}", file=out)
    print(f"bytes={nbytes}", file=out)
    return EXIT_OK


def _load(path: str):
    try:
        return load_table(path)
    except OSError as exc:
        raise UsageError(f"cannot read table {path}: {exc}")


def cmd_mul(args, out: TextIO) -> int:
    cfg = RunConfig(
        "mul",
        base=args.base,
        algorithm=args.algo,
        N=args.blocks,
        m=args.m,
        leaf_digits=args.leaf,
        table_path=args.table,
        counts=args.counts,
    )
    cfg.check()
    table = _load(cfg.table_path) if cfg.table_path else None
    base = cfg.base or (table.base if table else 10)
    a = from_text(args.a, base)
    b = from_text(args.b, base)
    ledger = CostLedger()
    product = multiply(
        a, b, cfg.algorithm, ledger, leaf_digits=cfg.leaf_digits, N=cfg.N, m=cfg.m, table=table
    )
    print(to_text(product), file=out)
    if cfg.counts:
        for name, value in ledger.as_dict().items():
            print(f"{name}={value}", file=out)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    try:
        table = load_table(args.table)
    except TableFormatError as exc:
        print(f"FAIL {exc.check}: {exc}", file=out)
        return EXIT_FAILED
    except OSError as exc:
        raise UsageError(f"cannot read table {args.table}: {exc}")
    report = verify_table(table, args.samples, seed=args.seed)
    if report.ok:
        print(f"PASS {report.checked}/{report.checked} entries", file=out)
        return EXIT_OK
    mm = report.first_mismatch
    print(
        f"FAIL {report.failed}/{report.checked} entries; first mismatch at "
        f"a={mm.a} b={mm.b}: expected {mm.expected}, stored {mm.found}",
        file=out,
    )
    return EXIT_FAILED


def cmd_model(args, out: TextIO) -> int:
    writer = csv.writer(out, lineterminator="\n")
    if args.mode == "figure1":
        writer.writerow(["N", "k", "value"])
        for k in range(args.N + 1):
            writer.writerow([args.N, k, format_number(figure1_curve(args.N, k))])
    elif args.mode == "rsa":
        writer.writerow(["quantity", "exact", "paper_estimate"])
        for row in rsa_scenario():
            writer.writerow(
                [row.quantity, format_number(row.exact), format_number(row.paper_estimate)]
            )
    else:
        if args.n is None:
            raise UsageError("model predict requires --n")
        params = ModelParams(n=args.n, m=args.m or 1, N=args.N, k=args.k, base=args.base or 10)
        writer.writerow(["quantity", "value"])
        for name, value in params.predictions():
            writer.writerow([name, format_number(value)])
    return EXIT_OK


def random_operand(rng: random.Random, digits: int, base: int) -> Natural:
    """``digits``-digit operand with a nonzero leading digit."""
    ds = [rng.randrange(base) for _ in range(digits - 1)] + [rng.randrange(1, base)]
    return Natural(base, ds)


def cmd_bench(args, out: TextIO) -> int:
    for algo in args.algos:
        if algo not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {algo!r}")
    if any(a in HYBRIDS for a in args.algos) and not args.table:
        raise UsageError("hybrid algorithms require --table")
    table = _load(args.table) if args.table else None
    base = args.base or (table.base if table else 10)
    if table is not None and table.base != base:
        raise UsageError(f"table is base {table.base}, --base is {base}")

    rng = random.Random(args.seed)
    rows = []
    for size in args.sizes:
        if size < 1:
            raise UsageError("sizes must be >= 1")
        a = random_operand(rng, size, base)
        b = random_operand(rng, size, base)
        reference = None
        for algo in args.algos:
            ledger = CostLedger()
            start = time.perf_counter_ns()
            product = multiply(
                a, b, algo, ledger, leaf_digits=args.leaf, N=args.blocks, table=table
            )
            elapsed = time.perf_counter_ns() - start
            if reference is None:
                reference = product
            elif product != reference:
                print(
                    f"correctness failure: {algo} disagrees at {size} digits",
                    file=sys.stderr,
                )
                return EXIT_FAILED
            counts = ledger.as_dict()
            rows.append(
                [algo, size]
                + [counts[c] for c in BENCH_COLUMNS[2:-1]]
                + [0 if args.no_timing else elapsed]
            )

    sink = open(args.out, "w", newline="") if args.out else out
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        writer.writerows(rows)
    finally:
        if args.out:
            sink.close()
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="karalut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a KLUT product table")
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--m", type=int, required=True, help="operand digits")
    p.add_argument("--out", default="table.klut")
    p.add_argument("--budget", type=int, help="memory budget in bytes (default 2 GiB)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("mul", help="multiply two numbers")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--algo", choices=ALGORITHMS, default="school")
    p.add_argument("--base", type=int, help="default: table base, else 10")
    p.add_argument("--leaf", type=int, default=1, help="karatsuba leaf size in digits")
    p.add_argument("--blocks", type=int, default=4, help="N: operands split into N+1 blocks")
    p.add_argument("--m", type=int, help="nblock block size (default: smallest that fits)")
    p.add_argument("--table", help="KLUT table for hybrid algorithms")
    p.add_argument("--counts", action="store_true", help="print operation counts")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("verify", help="check a KLUT table against long multiplication")
    p.add_argument("table")
    p.add_argument("--samples", type=int, help="random pairs to check (default: all)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("model", help="emit cost-model data as CSV")
    p.add_argument("mode", choices=("figure1", "rsa", "predict"))
    p.add_argument("--N", type=int, default=6)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--base", type=int)
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("bench", help="count operations across algorithms, as CSV")
    p.add_argument("--sizes", type=_int_list, default=[16, 32, 64])
    p.add_argument("--algos", type=_str_list, default=["school", "karatsuba"])
    p.add_argument("--base", type=int)
    p.add_argument("--leaf", type=int, default=1)
    p.add_argument("--blocks", type=int, default=4)
    p.add_argument("--table")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.add_argument("--no-timing", action="store_true", help="write 0 for wall_time_ns")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (UsageError, ParseError, ConfigError, TableFormatError, ValueError) as exc:
        print(f"karalut {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILED if isinstance(exc, TableFormatError) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
