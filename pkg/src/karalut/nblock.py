"""(N+1)-block multiplication from diagonal and pair products.

Both operands are cut into ``N+1`` blocks of ``m`` digits. Every cross term
``x_i*y_j + x_j*y_i`` is recovered as ``P_ij - D_i - D_j`` where
``D_i = x_i*y_i`` and ``P_ij = (x_i+x_j)*(y_i+y_j)``, so the whole product
needs ``(N+1) + C(N+1, 2)`` block multiplications.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

from .bignum import (
    CostLedger,
    Natural,
    _same_base,
    add,
    compare,
    shift_up,
    split_blocks,
    sub,
)
from .errors import ConfigError, UnderflowError
from .karatsuba import LeafMultiplier, pair_product


@dataclass(frozen=True, order=True)
class ProductTerm:
    """``D_i`` when ``j`` is None, otherwise ``P_ij`` with ``i < j``."""

    i: int
    j: Optional[int] = None

    def __post_init__(self):
        if self.i < 0 or (self.j is not None and self.j <= self.i):
            raise ValueError(f"invalid term indices ({self.i}, {self.j})")

    @property
    def is_diagonal(self) -> bool:
        return self.j is None

    @property
    def label(self) -> str:
        return f"D{self.i}" if self.j is None else f"P{self.i}{self.j}"

    def evaluate(self, xs, ys):
        """Value of the term over plain integer block values."""
        if self.j is None:
            return xs[self.i] * ys[self.i]
        return (xs[self.i] + xs[self.j]) * (ys[self.i] + ys[self.j])


SignedRef = tuple[int, ProductTerm]


@dataclass(frozen=True)
class ProductPlan:
    N: int
    terms: tuple[ProductTerm, ...]
    schema: tuple[tuple[SignedRef, ...], ...]

    @property
    def block_count(self) -> int:
        return self.N + 1

    def render(self, p: int) -> list[str]:
        return [("+" if sign > 0 else "-") + term.label for sign, term in self.schema[p]]


@lru_cache(maxsize=None)
def make_plan(N: int) -> ProductPlan:
    """Build the product terms and the per-power assembly schema for ``N+1`` blocks.

    The coefficient of ``B^(p*m)`` lists, for each pair ``i<j`` with
    ``i+j == p`` (ascending ``i``), ``+P_ij -D_i -D_j``, followed by ``+D_(p/2)``
    when ``p`` is even.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    diag = tuple(ProductTerm(i) for i in range(N + 1))
    pairs = tuple(ProductTerm(i, j) for i in range(N + 1) for j in range(i + 1, N + 1))
    schema = []
    for p in range(2 * N + 1):
        refs: list[SignedRef] = []
        for i in range(max(0, p - N), (p + 1) // 2):
            j = p - i
            refs += [(1, ProductTerm(i, j)), (-1, ProductTerm(i)), (-1, ProductTerm(j))]
        if p % 2 == 0:
            refs.append((1, ProductTerm(p // 2)))
        schema.append(tuple(refs))
    return ProductPlan(N, diag + pairs, tuple(schema))


class AssemblyOps(NamedTuple):
    within_coefficient: int
    cross_coefficient: int
    total: int


def count_assembly_ops(N: int) -> AssemblyOps:
    plan = make_plan(N)
    within = sum(len(refs) - 1 for refs in plan.schema)
    cross = 2 * N
    return AssemblyOps(within, cross, within + cross)


class SignedAccumulator:
    """Running sum of naturals that may dip below zero between steps.

    Each :meth:`add` / :meth:`sub` counts as one block operation.
    """

    def __init__(self, start: Natural):
        self.magnitude = start
        self.negative = False

    def add(self, x: Natural, ledger: CostLedger) -> None:
        ledger.block_adds += 1
        self._apply(x, subtract=False, ledger=ledger)

    def sub(self, x: Natural, ledger: CostLedger) -> None:
        ledger.block_subs += 1
        self._apply(x, subtract=True, ledger=ledger)

    def _apply(self, x: Natural, subtract: bool, ledger: CostLedger) -> None:
        if subtract == self.negative:
            self.magnitude = add(self.magnitude, x, ledger)
        elif compare(self.magnitude, x) >= 0:
            self.magnitude = sub(self.magnitude, x, ledger)
        else:
            self.magnitude = sub(x, self.magnitude, ledger)
            self.negative = not self.negative
        if not self.magnitude.digits:
            self.negative = False

    def result(self) -> Natural:
        if self.negative:
            raise UnderflowError("accumulated coefficient is negative")
        return self.magnitude


def nblock_mul(
    a: Natural,
    b: Natural,
    N: int,
    m: int,
    leaf: LeafMultiplier,
    ledger: CostLedger,
) -> Natural:
    base = _same_base(a, b)
    if m < 1:
        raise ConfigError("block size m must be >= 1")
    cap = leaf.max_operand_digits
    if cap is not None and cap < m:
        raise ConfigError(f"{leaf.name} leaf takes at most {cap} digits, blocks have {m}")
    plan = make_plan(N)
    xs = split_blocks(a, m, N + 1)
    ys = split_blocks(b, m, N + 1)

    values: dict[ProductTerm, Natural] = {}
    for term in plan.terms:
        i, j = term.i, term.j
        if j is None:
            values[term] = leaf(xs[i], ys[i], ledger)
        else:
            digits = pair_product(
                xs[i].digits,
                xs[j].digits,
                ys[i].digits,
                ys[j].digits,
                m,
                lambda s, t: leaf.on_digits(s, t, base, ledger),
                base,
                ledger,
            )
            values[term] = Natural._make(base, digits)

    result = Natural._raw(base, ())
    for p, refs in enumerate(plan.schema):
        first_sign, first = refs[0]
        assert first_sign > 0
        acc = SignedAccumulator(values[first])
        for sign, term in refs[1:]:
            if sign > 0:
                acc.add(values[term], ledger)
            else:
                acc.sub(values[term], ledger)
        coeff = shift_up(acc.result(), p * m)
        if p == 0:
            result = coeff
        else:
            ledger.block_adds += 1
            result = add(result, coeff, ledger)
    return result
