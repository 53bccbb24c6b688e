"""Divide-by-two multiplication with a pluggable leaf.

The recursion tracks a *nominal* block width rather than the actual digit
length of each block, so a block with leading zeros is still split the same
number of times as its siblings. Together with the carry-split middle product
this makes the number of leaf products exactly ``3**depth``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .bignum import (
    CostLedger,
    Digits,
    Natural,
    _same_base,
    _trim,
    add_digits,
    add_shifted,
    schoolbook_mul,
    sub_digits,
)
from .errors import ConfigError

LeafFn = Callable[[Natural, Natural, CostLedger], Natural]
DigitsFn = Callable[[Digits, Digits, int, CostLedger], Digits]


@dataclass(frozen=True)
class LeafMultiplier:
    """A multiplier that terminates recursion.

    ``max_operand_digits`` of ``None`` means any operand length is accepted.
    Every call bumps ``ledger.leaf_calls`` by one unless ``counted`` is false,
    which composite leaves use so that only their inner leaves are counted.

    ``digits_fn``, when given, must charge exactly what ``fn`` charges; the
    recursions use it to skip wrapping every leaf operand in a ``Natural``.
    """

    fn: LeafFn
    max_operand_digits: Optional[int] = None
    name: str = "leaf"
    counted: bool = True
    digits_fn: Optional[DigitsFn] = None

    def __call__(self, a: Natural, b: Natural, ledger: CostLedger) -> Natural:
        cap = self.max_operand_digits
        if cap is not None and (len(a.digits) > cap or len(b.digits) > cap):
            raise ConfigError(
                f"{self.name} accepts operands of at most {cap} digits, "
                f"got {len(a.digits)} and {len(b.digits)}"
            )
        if self.counted:
            ledger.leaf_calls += 1
        return self.fn(a, b, ledger)

    def on_digits(self, x: Digits, y: Digits, base: int, ledger: CostLedger) -> Digits:
        """Same as calling the leaf, on trimmed digit tuples."""
        if self.digits_fn is None:
            return self(Natural._make(base, x), Natural._make(base, y), ledger).digits
        cap = self.max_operand_digits
        if cap is not None and (len(x) > cap or len(y) > cap):
            raise ConfigError(
                f"{self.name} accepts operands of at most {cap} digits, "
                f"got {len(x)} and {len(y)}"
            )
        if self.counted:
            ledger.leaf_calls += 1
        return self.digits_fn(x, y, base, ledger)


def _digit_product_digits(x: Digits, y: Digits, base: int, ledger: CostLedger) -> Digits:
    # one hardware-style digit multiply, charged even when a digit is zero
    ledger.single_digit_mults += 1
    if not x or not y:
        return ()
    hi, lo = divmod(x[0] * y[0], base)
    return (lo, hi) if hi else (lo,)


def _digit_product(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
    return Natural._make(a.base, _digit_product_digits(a.digits, b.digits, a.base, ledger))


digit_leaf = LeafMultiplier(
    _digit_product, max_operand_digits=1, name="digit", digits_fn=_digit_product_digits
)
schoolbook_leaf = LeafMultiplier(schoolbook_mul, max_operand_digits=None, name="schoolbook")


@dataclass(frozen=True)
class KaratsubaConfig:
    leaf_digits: int = 1
    leaf: LeafMultiplier = digit_leaf

    def __post_init__(self):
        if self.leaf_digits < 1:
            raise ConfigError("leaf_digits must be >= 1")
        cap = self.leaf.max_operand_digits
        if cap is not None and self.leaf_digits > cap:
            raise ConfigError(
                f"leaf_digits={self.leaf_digits} exceeds what the {self.leaf.name} "
                f"leaf accepts ({cap} digits)"
            )


def pair_product(
    xa: Digits,
    xb: Digits,
    ya: Digits,
    yb: Digits,
    m: int,
    mul: Callable[[Digits, Digits], Digits],
    base: int,
    ledger: CostLedger,
) -> Digits:
    """``(xa + xb) * (ya + yb)`` for trimmed blocks of at most ``m`` digits.

    Each sum may carry into digit ``m``; it is rewritten as ``s + c*B^m`` with
    ``c`` in {0, 1} so ``mul`` is called exactly once, on ``m``-digit operands.
    The carry terms become shifted additions.
    """
    sx = add_digits(xa, xb, base, ledger)
    sy = add_digits(ya, yb, base, ledger)
    cx = len(sx) > m
    cy = len(sy) > m
    if cx:
        sx = _trim(sx[:m])
    if cy:
        sy = _trim(sy[:m])
    prod = mul(sx, sy)
    if cx:
        prod = add_shifted(prod, sy, m, base, ledger)
    if cy:
        prod = add_shifted(prod, sx, m, base, ledger)
    if cx and cy:
        prod = add_shifted(prod, (1,), 2 * m, base, ledger)
    return prod


def karatsuba_mul(
    a: Natural,
    b: Natural,
    cfg: KaratsubaConfig,
    ledger: CostLedger,
    width: Optional[int] = None,
) -> Natural:
    """Product of ``a`` and ``b``, recursing until the block width is ``cfg.leaf_digits``.

    ``width`` sets the nominal operand width to start from (defaults to the
    longer operand); it must be at least the actual length of both.
    """
    base = _same_base(a, b)
    width = max(len(a.digits), len(b.digits), width or 1)
    return Natural._make(base, _kmul(a.digits, b.digits, width, cfg, base, ledger))


def _kmul(
    x: Digits, y: Digits, width: int, cfg: KaratsubaConfig, base: int, ledger: CostLedger
) -> Digits:
    if width <= cfg.leaf_digits:
        return cfg.leaf.on_digits(x, y, base, ledger)

    m = (width + 1) // 2
    x0, x1 = _trim(x[:m]), x[m:]
    y0, y1 = _trim(y[:m]), y[m:]

    low = _kmul(x0, y0, m, cfg, base, ledger)
    high = _kmul(x1, y1, m, cfg, base, ledger)
    mid = pair_product(
        x0, x1, y0, y1, m, lambda s, t: _kmul(s, t, m, cfg, base, ledger), base, ledger
    )
    mid = sub_digits(sub_digits(mid, low, base, ledger), high, base, ledger)

    out = add_shifted(low, mid, m, base, ledger)
    return add_shifted(out, high, 2 * m, base, ledger)


def karatsuba_leaf(cfg: KaratsubaConfig, width: Optional[int] = None) -> LeafMultiplier:
    """Wrap a karatsuba configuration so it can serve as another algorithm's leaf.

    With ``width`` set, every call recurses from that nominal width, so each
    call costs exactly ``3**split_depth(width, cfg.leaf_digits)`` inner leaves.
    """

    def run(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
        return karatsuba_mul(a, b, cfg, ledger, width=width)

    return LeafMultiplier(
        run, max_operand_digits=None, name=f"karatsuba/{cfg.leaf.name}", counted=False
    )


def predict_leaf_products(s: int) -> int:
    if s < 0:
        raise ValueError("split depth must be >= 0")
    return 3**s


def split_depth(width: int, leaf_digits: int) -> int:
    """Number of halvings ``karatsuba_mul`` performs on ``width``-digit operands."""
    depth = 0
    width = max(width, 1)
    while width > leaf_digits:
        width = (width + 1) // 2
        depth += 1
    return depth
