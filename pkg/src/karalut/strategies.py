"""Named multiplication strategies, as selected by ``--algo`` on the command line."""

from __future__ import annotations

from typing import Optional

from .bignum import CostLedger, Natural, schoolbook_mul
from .cost_model import MulConfig
from .errors import ConfigError
from .karatsuba import (
    KaratsubaConfig,
    LeafMultiplier,
    digit_leaf,
    karatsuba_leaf,
    karatsuba_mul,
    schoolbook_leaf,
)
from .nblock import nblock_mul
from .table import ProductTable, as_leaf_multiplier

ALGORITHMS = ("school", "karatsuba", "nblock", "hybrid-karatsuba", "hybrid-nblock")
HYBRIDS = ("hybrid-karatsuba", "hybrid-nblock")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def plain_leaf(leaf_digits: int) -> LeafMultiplier:
    return digit_leaf if leaf_digits == 1 else schoolbook_leaf


def multiply(
    a: Natural,
    b: Natural,
    algorithm: str,
    ledger: CostLedger,
    *,
    leaf_digits: int = 1,
    N: int = 4,
    m: Optional[int] = None,
    table: Optional[ProductTable] = None,
) -> Natural:
    """Multiply with one of :data:`ALGORITHMS`.

    ``nblock`` picks the smallest block size that fits both operands unless
    ``m`` is given. ``hybrid-nblock`` uses the table's block size when the
    operands fit in ``N+1`` such blocks; longer operands get wider blocks whose
    products are computed by karatsuba recursion down to table lookups.
    """
    cfg = describe(a, b, algorithm, leaf_digits=leaf_digits, N=N, m=m, table=table)
    if algorithm == "school":
        return schoolbook_mul(a, b, ledger)
    if algorithm == "karatsuba":
        return karatsuba_mul(a, b, KaratsubaConfig(leaf_digits, plain_leaf(leaf_digits)), ledger)
    if algorithm == "nblock":
        return nblock_mul(a, b, N, cfg.m, schoolbook_leaf, ledger)
    assert table is not None
    lookup = as_leaf_multiplier(table)
    if algorithm == "hybrid-karatsuba":
        return karatsuba_mul(a, b, KaratsubaConfig(table.m, lookup), ledger)
    if cfg.m == table.m:
        leaf = lookup
    else:
        leaf = karatsuba_leaf(KaratsubaConfig(table.m, lookup), width=cfg.m)
    return nblock_mul(a, b, N, cfg.m, leaf, ledger)


def describe(
    a: Natural,
    b: Natural,
    algorithm: str,
    *,
    leaf_digits: int = 1,
    N: int = 4,
    m: Optional[int] = None,
    table: Optional[ProductTable] = None,
) -> MulConfig:
    """Resolve defaults and validate; returns the config the count predictions use."""
    if algorithm not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    if a.base != b.base:
        raise ConfigError(f"operands in different bases ({a.base}, {b.base})")
    n = max(len(a.digits), len(b.digits), 1)
    base = a.base
    if algorithm in HYBRIDS:
        if table is None:
            raise ConfigError(f"{algorithm} needs a product table")
        if table.base != base:
            raise ConfigError(f"table is base {table.base}, operands are base {base}")
    if algorithm in ("nblock", "hybrid-nblock") and N < 1:
        raise ConfigError("nblock algorithms need N >= 1")

    if algorithm == "school":
        return MulConfig("school", len(a.digits), base, n2=len(b.digits))
    if algorithm == "karatsuba":
        return MulConfig("karatsuba", n, base, leaf_digits=leaf_digits)
    if algorithm == "nblock":
        block = m if m is not None else _ceil_div(n, N + 1)
        if block * (N + 1) < n:
            raise ConfigError(f"{N + 1} blocks of {block} digits cannot hold {n} digits")
        return MulConfig("nblock", n, base, N=N, m=block)
    assert table is not None
    if algorithm == "hybrid-karatsuba":
        return MulConfig("hybrid-karatsuba", n, base, leaf_digits=table.m, table_m=table.m)
    block = max(table.m, _ceil_div(n, N + 1))
    return MulConfig("hybrid-nblock", n, base, N=N, m=block, table_m=table.m)
