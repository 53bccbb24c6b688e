"""Dense tables of all products of two m-digit numbers, and the KLUT file format.

KLUT layout (all integers little-endian)::

    offset  size  field
    0       4     magic  b"KLUT"
    4       1     format version (1)
    5       4     base, u32
    9       4     m, u32
    13      ...   base**(2m) entries; entry a*base**m + b holds a*b as 2m
                  digits, least significant first, each digit 1 byte when
                  base <= 256 and 2 bytes (u16) otherwise

The digit width is implied by the base, so it is not stored.
"""

from __future__ import annotations

import os
import random
import struct
from dataclasses import dataclass
from typing import BinaryIO, Optional, Union

import numpy as np

from .bignum import CostLedger, Natural, _trim, check_base, schoolbook_mul
from .cost_model import lookup_ops
from .errors import BaseMismatchError, BudgetExceededError, TableFormatError, TableWriteError
from .karatsuba import LeafMultiplier

MAGIC = b"KLUT"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBII")
HEADER_SIZE = _HEADER.size

DEFAULT_MEMORY_BUDGET = 2 * 1024**3
BUDGET_ENV_VAR = "KLUT_MEMORY_BUDGET_BYTES"
_ROW_CACHE_LIMIT = 1 << 20

PathOrStream = Union[str, os.PathLike, BinaryIO]


def digit_width(base: int) -> int:
    return 1 if base <= 256 else 2


def _dtype(base: int) -> np.dtype:
    return np.dtype("u1") if base <= 256 else np.dtype("<u2")


def table_nbytes(base: int, m: int) -> int:
    """Bytes of entry data (no header) for a ``base``, ``m`` table."""
    return base ** (2 * m) * 2 * m * digit_width(base)


def memory_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    return int(raw) if raw else DEFAULT_MEMORY_BUDGET


class ProductTable:
    """All products ``a*b`` for ``0 <= a, b < base**m``.

    ``entries`` has shape ``(base**(2m), 2m)``; row ``a*base**m + b`` holds the
    digits of ``a*b``, least significant first, zero-padded.
    """

    def __init__(self, base: int, m: int, entries: np.ndarray):
        check_base(base)
        if m < 1:
            raise ValueError("m must be >= 1")
        expected = (base ** (2 * m), 2 * m)
        if entries.shape != expected:
            raise ValueError(f"entries shape {entries.shape}, expected {expected}")
        self.base = base
        self.m = m
        self.entries = entries
        self.side = base**m
        self._probes = lookup_ops(m, base)
        self._rows: Optional[list[tuple[int, ...]]] = None

    def row(self, index: int) -> tuple[int, ...]:
        """Trimmed digits of entry ``index``; small tables are cached as tuples."""
        if self._rows is None:
            if len(self.entries) > _ROW_CACHE_LIMIT:
                return tuple(_trim(self.entries[index].tolist()))
            self._rows = [tuple(_trim(r)) for r in self.entries.tolist()]
        return self._rows[index]

    def entry(self, a: int, b: int) -> int:
        """Stored product for integer operands, as an int."""
        acc = 0
        for d in reversed(self.entries[a * self.side + b].tolist()):
            acc = acc * self.base + d
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductTable):
            return NotImplemented
        return (
            self.base == other.base
            and self.m == other.m
            and np.array_equal(self.entries, other.entries)
        )

    def __repr__(self) -> str:
        return f"ProductTable(base={self.base}, m={self.m}, entries={len(self.entries)})"


def generate_table(base: int, m: int, budget: Optional[int] = None) -> ProductTable:
    """Fill a table by long multiplication of every operand pair.

    Raises :class:`BudgetExceededError` before allocating anything if the
    entry data would exceed ``budget`` bytes (default: :func:`memory_budget`).
    """
    check_base(base)
    if m < 1:
        raise ValueError("m must be >= 1")
    if budget is None:
        budget = memory_budget()
    need = table_nbytes(base, m)
    if need > budget:
        raise BudgetExceededError(need, budget, base ** (2 * m))

    side = base**m
    width = 2 * m
    operands = [Natural.from_int(v, base) for v in range(side)]
    scratch = CostLedger()
    flat = [0] * (side * side * width)
    off = 0
    for a in operands:
        for b in operands:
            ds = schoolbook_mul(a, b, scratch).digits
            flat[off:off + len(ds)] = ds
            off += width
    entries = np.array(flat, dtype=_dtype(base)).reshape(side * side, width)
    return ProductTable(base, m, entries)


def table_lookup(t: ProductTable, a: Natural, b: Natural, ledger: CostLedger) -> Natural:
    """Read ``a*b`` from the table.

    The row is addressed directly, but the ledger is charged the probes a
    binary search over the sorted table would take, so counts stay
    comparable with the closed-form cost model.
    """
    if a.base != t.base or b.base != t.base:
        raise BaseMismatchError(f"table base {t.base}, operands {a.base} and {b.base}")
    m = t.m
    if len(a.digits) > m or len(b.digits) > m:
        raise ValueError(
            f"table holds {m}-digit operands, got {len(a.digits)} and {len(b.digits)}"
        )
    base = t.base
    ia = 0
    for d in reversed(a.digits):
        ia = ia * base + d
    ib = 0
    for d in reversed(b.digits):
        ib = ib * base + d
    ledger.table_lookups += 1
    ledger.comparisons += t._probes
    return Natural._make(base, t.row(ia * t.side + ib))


def as_leaf_multiplier(t: ProductTable) -> LeafMultiplier:
    base, side, probes = t.base, t.side, t._probes

    def lookup(a: Natural, b: Natural, ledger: CostLedger) -> Natural:
        return table_lookup(t, a, b, ledger)

    def lookup_digits(x, y, operand_base, ledger):
        if operand_base != base:
            raise BaseMismatchError(f"table base {base}, operands base {operand_base}")
        ia = ib = 0
        for d in reversed(x):
            ia = ia * base + d
        for d in reversed(y):
            ib = ib * base + d
        ledger.table_lookups += 1
        ledger.comparisons += probes
        return t.row(ia * side + ib)

    return LeafMultiplier(
        lookup, max_operand_digits=t.m, name=f"table(m={t.m})", digits_fn=lookup_digits
    )


# --------------------------------------------------------------------------
# persistence


def to_bytes(t: ProductTable) -> bytes:
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, t.base, t.m)
    return header + t.entries.astype(_dtype(t.base), copy=False).tobytes()


def save_table(t: ProductTable, destination: PathOrStream) -> int:
    """Write ``t`` in KLUT format; returns the number of bytes written."""
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "wb") as fh:
            return save_table(t, fh)
    data = memoryview(to_bytes(t))
    written = 0
    chunk = 1 << 20
    try:
        while written < len(data):
            n = destination.write(data[written:written + chunk])
            # buffered streams return None or the full length; raw ones may write short
            written += min(chunk, len(data) - written) if n is None else n
    except OSError as exc:
        raise TableWriteError(written, exc) from exc
    return written


def load_table(source: Union[PathOrStream, bytes]) -> ProductTable:
    """Read a KLUT stream, checking magic, version, header fields and length."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    else:
        data = source.read()

    if len(data) < HEADER_SIZE:
        raise TableFormatError("length", f"{len(data)} bytes is shorter than the header")
    magic, version, base, m = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise TableFormatError("magic", f"expected {MAGIC!r}, found {magic!r}")
    if version != FORMAT_VERSION:
        raise TableFormatError("version", f"expected {FORMAT_VERSION}, found {version}")
    try:
        check_base(base)
    except ValueError as exc:
        raise TableFormatError("base", str(exc)) from None
    if m < 1:
        raise TableFormatError("m", f"m must be >= 1, found {m}")
    # refuse absurd headers before computing base**(2m)
    if (2 * m) * (base.bit_length() - 1) > 8 * len(data):
        raise TableFormatError("length", f"header claims base {base}, m {m}: larger than file")
    expected = HEADER_SIZE + table_nbytes(base, m)
    if len(data) != expected:
        raise TableFormatError("length", f"expected {expected} bytes, found {len(data)}")

    dt = _dtype(base)
    entries = np.frombuffer(data, dtype=dt, offset=HEADER_SIZE).reshape(base ** (2 * m), 2 * m)
    if entries.size and int(entries.max()) >= base:
        raise TableFormatError("digit", f"digit value >= base {base}")
    return ProductTable(base, m, entries.astype(dt.newbyteorder("=")))


# --------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Mismatch:
    a: int
    b: int
    expected: int
    found: int


@dataclass(frozen=True)
class VerificationReport:
    checked: int
    failed: int
    first_mismatch: Optional[Mismatch]

    @property
    def ok(self) -> bool:
        return self.failed == 0


def verify_table(
    t: ProductTable,
    samples: Optional[int] = None,
    *,
    exhaustive: bool = False,
    seed: int = 0,
) -> VerificationReport:
    """Compare entries with long multiplication.

    Checks every entry when ``exhaustive`` is set or ``samples`` is None,
    otherwise ``samples`` pairs drawn with ``random.Random(seed)``.
    """
    side = t.side
    if exhaustive or samples is None:
        pairs = ((a, b) for a in range(side) for b in range(side))
    else:
        rng = random.Random(seed)
        pairs = ((rng.randrange(side), rng.randrange(side)) for _ in range(samples))

    scratch = CostLedger()
    cache: dict[int, Natural] = {}

    def nat(v: int) -> Natural:
        if v not in cache:
            cache[v] = Natural.from_int(v, t.base)
        return cache[v]

    checked = failed = 0
    first = None
    for a, b in pairs:
        checked += 1
        expected = schoolbook_mul(nat(a), nat(b), scratch)
        stored = t.entries[a * side + b].tolist()
        if list(expected.digits) + [0] * (2 * t.m - len(expected.digits)) != stored:
            failed += 1
            if first is None:
                found = 0
                for d in reversed(stored):
                    found = found * t.base + d
                first = Mismatch(a, b, expected.value, found)
    return VerificationReport(checked, failed, first)
