"""Closed-form operation counts for the multiplication strategies.

Values are exact (``int`` or ``Fraction``) wherever the formula allows;
``float`` is only used for quantities involving logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, Fraction, float]

# A lookup is assumed to cost this fraction of one digit multiplication in
# wall-clock terms. Only used to weight reported costs, never ledger counts.
DEFAULT_LOOKUP_TIME_RATIO = Fraction(1, 5)

# Rounded figures quoted for the 1000-digit RSA modulus scenario.
QUOTED_FLAT_ESTIMATE = 42_500
QUOTED_FLAT_FACTOR = 85
QUOTED_HYBRID_ESTIMATE = 4200
QUOTED_NLOGN_ESTIMATE = 4500
QUOTED_TABLE_ENTRIES = 10**12
QUOTED_TABLE_BYTES = 20 * 10**12
QUOTED_LOOKUP_OPS_PER_DIGIT = 6

RSA_N_DIGITS = 500
RSA_M_DIGITS = 6
RSA_BASE = 10
RSA_KARATSUBA_STEPS = 6

WORD_BYTES = 8


def nblock_product_count(N: int) -> int:
    if N < 1:
        raise ValueError("N must be >= 1")
    return (N + 1) + math.comb(N + 1, 2)


def strategy_lookup_counts(k: int) -> tuple[int, int]:
    """Lookups after ``k`` halving steps vs. after one split into ``2**k`` blocks."""
    if k < 1:
        raise ValueError("k must be >= 1")
    blocks = 2**k
    return 3**k, blocks + math.comb(blocks, 2)


def total_ops_prediction(n: int, N: int, k: int) -> Fraction:
    """``n * (1 + N/2)**k``: recursive (N+1)-splitting for k levels, then lookups."""
    if n < 1 or k < 1 or N < 1:
        raise ValueError("n, N and k must all be >= 1")
    return n * (1 + Fraction(N, 2)) ** k


def figure1_curve(N: int, k: int) -> Fraction:
    """``3**N * (2/3)**(N-k)``: relative cost when recursion stops after k of N halvings."""
    if not 0 <= k <= N:
        raise ValueError("need 0 <= k <= N")
    return Fraction(3) ** N * Fraction(2, 3) ** (N - k)


def lookup_ops(m: int, base: int) -> int:
    """Binary-search probes into a sorted table of all ``base**m x base**m`` products."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if base & (base - 1) == 0:
        # exact integer log; keeps float error out of the ceiling
        return 2 * m * (base.bit_length() - 1)
    return math.ceil(2 * m * math.log2(base))


def flat_lookup_cost(n: int, m: int) -> Fraction:
    """``n**2 / m``: one-level split into m-digit blocks, ~6m probes per lookup."""
    return Fraction(n * n, m)


def hybrid_cost(k: int, m: int) -> int:
    """``3**k * m``: k halvings followed by ``3**k`` lookups of m-digit products."""
    return 3**k * m


def table_entries(base: int, m: int) -> int:
    return base ** (2 * m)


def sorted_table_bytes(base: int, m: int) -> int:
    """Size of a binary-searchable table of (operand-pair key, product) records.

    Key and product each span ``2m`` base-B digits and are stored in whole
    machine words.
    """
    words = math.ceil(2 * m * math.log2(base) / (8 * WORD_BYTES))
    return table_entries(base, m) * 2 * words * WORD_BYTES


def klut_bytes(base: int, m: int) -> int:
    """Size of the dense KLUT file (header included)."""
    from .table import HEADER_SIZE, digit_width

    return HEADER_SIZE + table_entries(base, m) * 2 * m * digit_width(base)


@dataclass(frozen=True)
class ScenarioRow:
    quantity: str
    exact: Number
    paper_estimate: Optional[Number]


def rsa_scenario() -> list[ScenarioRow]:
    """Cost figures for 500-digit factors, 6-digit table operands, base 10."""
    n, m, base, k = RSA_N_DIGITS, RSA_M_DIGITS, RSA_BASE, RSA_KARATSUBA_STEPS
    return [
        ScenarioRow("flat_lookup_cost", flat_lookup_cost(n, m), QUOTED_FLAT_ESTIMATE),
        ScenarioRow("flat_factor", Fraction(n, m), QUOTED_FLAT_FACTOR),
        ScenarioRow("hybrid_cost", hybrid_cost(k, m), QUOTED_HYBRID_ESTIMATE),
        ScenarioRow("nlogn_reference", n * math.log2(n), QUOTED_NLOGN_ESTIMATE),
        ScenarioRow("lookup_ops", lookup_ops(m, base), QUOTED_LOOKUP_OPS_PER_DIGIT * m),
        ScenarioRow("table_entries", table_entries(base, m), QUOTED_TABLE_ENTRIES),
        ScenarioRow("table_bytes_estimate", sorted_table_bytes(base, m), QUOTED_TABLE_BYTES),
        ScenarioRow("klut_bytes", klut_bytes(base, m), None),
    ]


def rsa_report() -> dict[str, ScenarioRow]:
    return {row.quantity: row for row in rsa_scenario()}


@dataclass(frozen=True)
class ModelParams:
    n: int
    m: int = 1
    N: int = 1
    k: int = 1
    base: int = 10
    lookup_time_ratio: Fraction = DEFAULT_LOOKUP_TIME_RATIO

    def __post_init__(self):
        if not 0 < self.lookup_time_ratio <= 1:
            raise ValueError("lookup_time_ratio must be in (0, 1]")

    @property
    def s(self) -> Optional[int]:
        """log2(n) when n is a power of two."""
        if self.n > 0 and self.n & (self.n - 1) == 0:
            return self.n.bit_length() - 1
        return None

    @property
    def lookup_ops_L(self) -> int:
        return lookup_ops(self.m, self.base)

    def predictions(self) -> list[tuple[str, Number]]:
        from .nblock import count_assembly_ops

        kara, block = strategy_lookup_counts(self.k)
        rows: list[tuple[str, Number]] = [
            ("nblock_products", nblock_product_count(self.N)),
            ("assembly_ops", count_assembly_ops(self.N).total),
            ("karatsuba_lookups", kara),
            ("block_lookups", block),
            ("total_ops", total_ops_prediction(self.n, self.N, self.k)),
            ("lookup_ops", self.lookup_ops_L),
            ("flat_lookup_cost", flat_lookup_cost(self.n, self.m)),
            ("hybrid_cost", hybrid_cost(self.k, self.m)),
            ("lookup_mult_equivalent", kara * self.lookup_time_ratio),
            ("table_entries", table_entries(self.base, self.m)),
        ]
        if self.s is not None:
            rows.insert(0, ("karatsuba_leaf_products", 3**self.s))
        return rows


# --------------------------------------------------------------------------
# binding predictions to measured ledgers


@dataclass(frozen=True)
class MulConfig:
    """What a finished multiplication was run with, for predicting its counts.

    ``algorithm`` is one of ``school``, ``karatsuba``, ``nblock``,
    ``hybrid-karatsuba`` or ``hybrid-nblock``. ``n`` is the operand width in
    digits (the longer operand). For ``school`` give both widths via ``n`` and
    ``n2``. ``m`` is the nblock block size and ``table_m`` the operand size of
    the lookup table used by the hybrids.
    """

    algorithm: str
    n: int
    base: int = 10
    leaf_digits: int = 1
    N: int = 1
    m: int = 1
    n2: Optional[int] = None
    table_m: Optional[int] = None


@dataclass(frozen=True)
class Comparison:
    quantity: str
    predicted: int
    measured: int

    @property
    def match(self) -> bool:
        return self.predicted == self.measured


@dataclass
class ComparisonReport:
    rows: list[Comparison] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def __getitem__(self, quantity: str) -> Comparison:
        for r in self.rows:
            if r.quantity == quantity:
                return r
        raise KeyError(quantity)


def predicted_vs_measured(cfg: MulConfig, ledger) -> ComparisonReport:
    from .karatsuba import split_depth
    from .nblock import count_assembly_ops

    rows = []
    algo = cfg.algorithm
    if algo == "school":
        n2 = cfg.n if cfg.n2 is None else cfg.n2
        rows.append(Comparison("single_digit_mults", cfg.n * n2, ledger.single_digit_mults))
        return ComparisonReport(rows)

    if algo in ("karatsuba", "hybrid-karatsuba"):
        leaves = 3 ** split_depth(cfg.n, cfg.leaf_digits)
    elif algo in ("nblock", "hybrid-nblock"):
        leaves = nblock_product_count(cfg.N)
        if algo == "hybrid-nblock" and cfg.table_m is not None:
            leaves *= 3 ** split_depth(cfg.m, cfg.table_m)
        rows.append(
            Comparison(
                "assembly_ops",
                count_assembly_ops(cfg.N).total,
                ledger.block_adds + ledger.block_subs,
            )
        )
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    rows.insert(0, Comparison("leaf_products", leaves, ledger.leaf_calls))

    if algo.startswith("hybrid-"):
        probes = lookup_ops(cfg.table_m or cfg.m, cfg.base)
        rows.append(Comparison("table_lookups", leaves, ledger.table_lookups))
        rows.append(Comparison("single_digit_mults", 0, ledger.single_digit_mults))
        rows.append(Comparison("comparisons", leaves * probes, ledger.comparisons))
    elif algo == "karatsuba" and cfg.leaf_digits == 1:
        rows.append(Comparison("single_digit_mults", leaves, ledger.single_digit_mults))
    return ComparisonReport(rows)
