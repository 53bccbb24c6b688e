"""Base-B natural numbers stored as digit tuples, least-significant digit first.

Every arithmetic primitive takes an explicit :class:`CostLedger` so that the
multiplication strategies built on top of it can be compared by operation
count rather than wall-clock time.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

from .errors import BaseMismatchError, ParseError, UnderflowError

MIN_BASE = 2
MAX_BASE = 65536

# bases up to 36 use single alphanumeric characters per digit
_ALNUM = string.digits + string.ascii_lowercase
_ALNUM_MAX_BASE = len(_ALNUM)

Digits = tuple[int, ...]


def check_base(base: int) -> int:
    if isinstance(base, bool) or not isinstance(base, int):
        raise TypeError(f"base must be an int, got {type(base).__name__}")
    if not MIN_BASE <= base <= MAX_BASE:
        raise ValueError(f"base must be in [{MIN_BASE}, {MAX_BASE}], got {base}")
    return base


@dataclass
class CostLedger:
    """Counters for the primitive operations performed by one computation.

    ``leaf_calls`` counts invocations of a recursion leaf (digit multiply,
    schoolbook leaf or table lookup) and is what the product-count claims
    are checked against when the leaf itself costs more than one unit.
    """

    single_digit_mults: int = 0
    table_lookups: int = 0
    digit_adds: int = 0
    digit_subs: int = 0
    block_adds: int = 0
    block_subs: int = 0
    comparisons: int = 0
    leaf_calls: int = 0

    def merge(self, other: CostLedger) -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def counter_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


class Natural:
    """Immutable non-negative integer in a fixed base.

    Zero is the empty digit tuple; otherwise the last digit is nonzero.
    """

    __slots__ = ("base", "digits")

    def __init__(self, base: int, digits: Iterable[int] = ()):
        check_base(base)
        ds = list(digits)
        for pos, d in enumerate(ds):
            if not (isinstance(d, int) and 0 <= d < base):
                raise ValueError(f"digit {d!r} at position {pos} not in [0, {base})")
        _set_base(self, base)
        _set_digits(self, _trim(ds))

    @classmethod
    def _raw(cls, base: int, digits: Sequence[int]) -> Natural:
        # trusted constructor: digits already in range, may need trimming
        return cls._make(base, _trim(digits))

    @classmethod
    def _make(cls, base: int, digits: Digits) -> Natural:
        # trusted constructor: digits already an in-range, trimmed tuple
        obj = _new(cls)
        _set_base(obj, base)
        _set_digits(obj, digits)
        return obj

    @classmethod
    def zero(cls, base: int) -> Natural:
        check_base(base)
        return cls._raw(base, ())

    @classmethod
    def from_int(cls, value: int, base: int) -> Natural:
        check_base(base)
        if value < 0:
            raise ValueError("naturals cannot be negative")
        out = []
        while value:
            value, d = divmod(value, base)
            out.append(d)
        return cls._raw(base, out)

    @property
    def value(self) -> int:
        acc = 0
        for d in reversed(self.digits):
            acc = acc * self.base + d
        return acc

    def __len__(self) -> int:
        return len(self.digits)

    def __bool__(self) -> bool:
        return bool(self.digits)

    def __setattr__(self, name, value):
        raise AttributeError("Natural is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Natural):
            return NotImplemented
        return self.base == other.base and self.digits == other.digits

    def __hash__(self) -> int:
        return hash((self.base, self.digits))

    def __repr__(self) -> str:
        return f"Natural({to_text(self)!r}, base={self.base})"

    def __reduce__(self):
        return (Natural, (self.base, self.digits))


_new = object.__new__
_set_base = Natural.base.__set__  # type: ignore[attr-defined]
_set_digits = Natural.digits.__set__  # type: ignore[attr-defined]


def _trim(digits: Sequence[int]) -> Digits:
    end = len(digits)
    if end and digits[end - 1]:
        return tuple(digits)
    while end and digits[end - 1] == 0:
        end -= 1
    return tuple(digits[:end])


def _same_base(a: Natural, b: Natural) -> int:
    if a.base != b.base:
        raise BaseMismatchError(f"base mismatch: {a.base} vs {b.base}")
    return a.base


# --------------------------------------------------------------------------
# text form


def from_text(text: str, base: int) -> Natural:
    """Parse ``text`` as a natural number in ``base``.

    Bases up to 36 use the characters ``0-9a-z`` (case-insensitive), most
    significant first. Larger bases take a dot-separated list of decimal
    digit values, e.g. ``"1.255"`` is 511 in base 256.
    """
    check_base(base)
    if not text:
        raise ParseError("empty input", position=0)
    if base <= _ALNUM_MAX_BASE:
        digits = []
        for pos, ch in enumerate(text):
            d = _ALNUM.find(ch.lower())
            if d < 0 or d >= base:
                raise ParseError(f"invalid digit {ch!r} for base {base}", position=pos)
            digits.append(d)
    else:
        digits = []
        offset = 0
        for part in text.split("."):
            if not part.isdigit() or not part.isascii() or int(part) >= base:
                raise ParseError(
                    f"invalid digit value {part!r} for base {base}", position=offset
                )
            digits.append(int(part))
            offset += len(part) + 1
    digits.reverse()
    return Natural._raw(base, digits)


def to_text(a: Natural) -> str:
    if not a.digits:
        return "0"
    if a.base <= _ALNUM_MAX_BASE:
        return "".join(_ALNUM[d] for d in reversed(a.digits))
    return ".".join(str(d) for d in reversed(a.digits))


# --------------------------------------------------------------------------
# linear-time primitives


def add_digits(x: Digits, y: Digits, base: int, ledger: CostLedger) -> Digits:
    """Digit-tuple form of :func:`add`; inputs and output are trimmed."""
    if len(x) < len(y):
        x, y = y, x
    ledger.digit_adds += len(x)
    return _add_uncounted(x, y, base)


def _add_uncounted(x: Digits, y: Digits, base: int) -> Digits:
    # requires len(x) >= len(y)
    if not y:
        return x
    out = []
    carry = 0
    for dx, dy in zip(x, y):
        t = dx + dy + carry
        if t >= base:
            out.append(t - base)
            carry = 1
        else:
            out.append(t)
            carry = 0
    if carry:
        for i in range(len(y), len(x)):
            t = x[i] + 1
            if t < base:
                out.append(t)
                out.extend(x[i + 1:])
                break
            out.append(0)
        else:
            out.append(1)
    else:
        out.extend(x[len(y):])
    return tuple(out)


def add_shifted(x: Digits, y: Digits, k: int, base: int, ledger: CostLedger) -> Digits:
    """``add_digits(x, (0,) * k + y)`` without building the shifted operand.

    Charges the same as that call: one add per position of the longer operand,
    with an empty ``y`` counting as zero digits.
    """
    if not y:
        ledger.digit_adds += len(x)
        return x
    if len(x) <= k:
        ledger.digit_adds += k + len(y)
        return x + (0,) * (k - len(x)) + y
    ledger.digit_adds += max(len(x), k + len(y))
    hi = x[k:]
    if len(hi) < len(y):
        hi, y = y, hi
    return x[:k] + _add_uncounted(hi, y, base)


def sub_digits(x: Digits, y: Digits, base: int, ledger: CostLedger) -> Digits:
    """Digit-tuple form of :func:`sub`; the caller guarantees ``x >= y``."""
    ledger.digit_subs += len(x)
    if not y:
        return x
    out = []
    borrow = 0
    for dx, dy in zip(x, y):
        t = dx - dy - borrow
        if t < 0:
            out.append(t + base)
            borrow = 1
        else:
            out.append(t)
            borrow = 0
    if borrow:
        for i in range(len(y), len(x)):
            if x[i]:
                out.append(x[i] - 1)
                out.extend(x[i + 1:])
                break
            out.append(base - 1)
    else:
        out.extend(x[len(y):])
    return _trim(out)


def add(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
    """Return ``a + b``; charges one digit add per position of the longer operand."""
    base = _same_base(a, b)
    return Natural._make(base, add_digits(a.digits, b.digits, base, ledger))


def sub(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
    """Return ``a - b``; raises :class:`UnderflowError` when ``a < b``."""
    base = _same_base(a, b)
    if compare(a, b) < 0:
        raise UnderflowError(f"{to_text(a)} - {to_text(b)} is negative")
    return Natural._make(base, sub_digits(a.digits, b.digits, base, ledger))


def compare(a: Natural, b: Natural, ledger: CostLedger | None = None) -> int:
    """Three-way comparison: -1, 0 or 1 as ``a`` is less, equal or greater."""
    _same_base(a, b)
    if ledger is not None:
        ledger.comparisons += 1
    x, y = a.digits, b.digits
    if len(x) != len(y):
        return -1 if len(x) < len(y) else 1
    for dx, dy in zip(reversed(x), reversed(y)):
        if dx != dy:
            return -1 if dx < dy else 1
    return 0


def shift_up(a: Natural, k: int) -> Natural:
    """Multiply by ``base**k``. Free: no ledger counter is touched."""
    if k < 0:
        raise ValueError("shift must be non-negative")
    if not a.digits or k == 0:
        return a
    return Natural._make(a.base, (0,) * k + a.digits)


def low_digits(a: Natural, m: int) -> Natural:
    """``a mod base**m`` (a slice, no arithmetic)."""
    return Natural._raw(a.base, a.digits[:m])


def split_blocks(a: Natural, m: int, count: int) -> list[Natural]:
    """Cut ``a`` into ``count`` blocks of ``m`` digits, least significant first."""
    if m < 1 or count < 1:
        raise ValueError("block size and count must be >= 1")
    if len(a.digits) > m * count:
        raise ValueError(
            f"operand has {len(a.digits)} digits but the plan holds only "
            f"{count} x {m} = {count * m}; increase the block count or size"
        )
    ds = a.digits
    return [Natural._raw(a.base, ds[i * m:(i + 1) * m]) for i in range(count)]


def schoolbook_mul(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
    """Long multiplication; charges exactly ``len(a) * len(b)`` digit products."""
    base = _same_base(a, b)
    x, y = a.digits, b.digits
    ledger.single_digit_mults += len(x) * len(y)
    if not x or not y:
        return Natural._raw(base, ())
    ly = len(y)
    out = [0] * (len(x) + ly)
    for i, dx in enumerate(x):
        if dx == 0:
            continue
        carry = 0
        k = i
        for dy in y:
            t = out[k] + dx * dy + carry
            carry, out[k] = divmod(t, base)
            k += 1
        while carry:
            t = out[k] + carry
            carry, out[k] = divmod(t, base)
            k += 1
    return Natural._raw(base, out)
