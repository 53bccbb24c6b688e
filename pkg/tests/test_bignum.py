import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from karalut.bignum import (
    CostLedger,
    Natural,
    add,
    check_base,
    compare,
    from_text,
    schoolbook_mul,
    shift_up,
    split_blocks,
    sub,
    to_text,
)
from karalut.errors import BaseMismatchError, ParseError, UnderflowError

from oracles import dec_add, dec_mul, from_base, to_base

bases = st.sampled_from([2, 3, 10, 16, 36, 37, 256, 65536])


@st.composite
def naturals(draw, base=None, max_digits=40):
    b = draw(bases) if base is None else base
    ds = draw(st.lists(st.integers(0, b - 1), max_size=max_digits))
    return Natural(b, ds)


@st.composite
def same_base_pair(draw, max_digits=40):
    b = draw(bases)
    return draw(naturals(b, max_digits)), draw(naturals(b, max_digits))


def nat(value, base=10):
    return Natural.from_int(value, base)


# ---------------------------------------------------------------- base / type


@pytest.mark.parametrize("base", [2, 10, 65536])
def test_valid_bases(base):
    assert check_base(base) == base


@pytest.mark.parametrize("base", [0, 1, 65537, -10])
def test_invalid_bases(base):
    with pytest.raises(ValueError):
        check_base(base)


def test_natural_is_canonical_and_immutable():
    n = Natural(10, [4, 3, 0, 0])
    assert n.digits == (4, 3)
    assert Natural(10, [0, 0]).digits == ()
    with pytest.raises(AttributeError):
        n.digits = (1,)
    with pytest.raises(ValueError):
        Natural(10, [10])


def test_fresh_ledger_is_zero():
    assert all(v == 0 for v in CostLedger().as_dict().values())


# ---------------------------------------------------------------- text


def test_from_text_examples():
    assert from_text("0", 10).digits == ()
    assert from_text("1234", 10).digits == (4, 3, 2, 1)
    assert from_text("255", 256).digits == (255,)
    assert from_text("1.255", 256).value == 511
    assert from_text("00012", 10).digits == (2, 1)
    assert from_text("FF", 16).value == 255


def test_to_text_examples():
    assert to_text(Natural(10)) == "0"
    assert to_text(Natural(10, [4, 3, 2, 1])) == "1234"
    assert to_text(Natural(256, [255])) == "255"
    assert to_text(Natural(256, [255, 1])) == "1.255"


@pytest.mark.parametrize(
    "text, base, position",
    [("12a4", 10, 2), ("102", 2, 2), ("1.256", 256, 2), ("", 10, 0), ("1..2", 256, 2)],
)
def test_parse_errors_name_position(text, base, position):
    with pytest.raises(ParseError) as info:
        from_text(text, base)
    assert info.value.position == position


@given(naturals())
def test_text_round_trip(a):
    assert from_text(to_text(a), a.base) == a


@given(st.integers(0, 10**60))
def test_decimal_text_matches_python(value):
    assert to_text(nat(value)) == str(value)


# ---------------------------------------------------------------- add / sub / compare


def test_add_examples():
    led = CostLedger()
    x = nat(4711)
    assert add(nat(0), x, led) == x
    assert add(nat(999), nat(1), led).value == 1000


def test_add_counts_longer_operand_positions():
    led = CostLedger()
    add(nat(999), nat(1), led)
    assert led.digit_adds == 3
    add(nat(5), nat(123456), led)
    assert led.digit_adds == 3 + 6


@given(st.integers(0, 10**50), st.integers(0, 10**50))
def test_add_matches_handwritten_decimal_addition(x, y):
    got = to_text(add(from_text(str(x), 10), from_text(str(y), 10), CostLedger()))
    assert got == dec_add(str(x), str(y))


@given(same_base_pair())
def test_add_matches_int(pair):
    a, b = pair
    assert add(a, b, CostLedger()).value == a.value + b.value


def test_sub_examples():
    led = CostLedger()
    x = nat(4711)
    assert sub(x, nat(0), led) == x
    assert sub(x, x, led).digits == ()
    assert led.digit_subs == 8
    assert sub(nat(1000), nat(1), led).value == 999


def test_sub_underflow():
    with pytest.raises(UnderflowError):
        sub(nat(9), nat(10), CostLedger())


@given(same_base_pair())
def test_add_sub_inverse(pair):
    a, b = sorted(pair, key=lambda n: n.value, reverse=True)
    led = CostLedger()
    assert add(sub(a, b, led), b, led) == a


def test_compare_examples():
    assert compare(nat(0), nat(0)) == 0
    assert compare(nat(9), nat(10)) == -1
    assert compare(nat(10), nat(9)) == 1
    led = CostLedger()
    compare(nat(1), nat(2), led)
    assert led.comparisons == 1


@given(same_base_pair())
def test_compare_matches_int(pair):
    a, b = pair
    expected = (a.value > b.value) - (a.value < b.value)
    assert compare(a, b) == expected


def test_base_mismatch():
    with pytest.raises(BaseMismatchError):
        add(nat(1, 10), nat(1, 16), CostLedger())
    with pytest.raises(BaseMismatchError):
        compare(nat(1, 10), nat(1, 16))
    with pytest.raises(BaseMismatchError):
        schoolbook_mul(nat(1, 10), nat(1, 2), CostLedger())


# ---------------------------------------------------------------- shift / split


def test_shift_examples():
    assert shift_up(nat(0), 5).digits == ()
    assert shift_up(nat(12), 2).value == 1200
    with pytest.raises(ValueError):
        shift_up(nat(1), -1)


@given(st.integers(1, 10**30), st.integers(0, 20))
def test_shift_appends_zeros(value, k):
    assert to_text(shift_up(nat(value), k)) == str(value) + "0" * k


def test_split_examples():
    assert [b.value for b in split_blocks(nat(1234), 2, 2)] == [34, 12]
    assert [b.value for b in split_blocks(nat(7), 2, 2)] == [7, 0]
    with pytest.raises(ValueError, match="increase"):
        split_blocks(nat(12345), 2, 2)


@given(naturals(max_digits=30), st.integers(1, 6), st.integers(1, 8))
def test_split_join_inverse(a, m, count):
    if len(a) > m * count:
        with pytest.raises(ValueError):
            split_blocks(a, m, count)
        return
    blocks = split_blocks(a, m, count)
    assert len(blocks) == count
    assert all(len(b) <= m for b in blocks)
    led = CostLedger()
    total = Natural(a.base)
    for i, b in enumerate(blocks):
        total = add(total, shift_up(b, i * m), led)
    assert total == a


# ---------------------------------------------------------------- schoolbook


def test_schoolbook_examples():
    led = CostLedger()
    assert schoolbook_mul(nat(1234), nat(0), led).digits == ()
    assert led.single_digit_mults == 0
    # frozen from Python int arithmetic: 1234 * 5678
    assert schoolbook_mul(nat(1234), nat(5678), led).value == 7006652
    led = CostLedger()
    schoolbook_mul(nat(123), nat(4567), led)
    assert led.single_digit_mults == 12


def test_schoolbook_against_handwritten_decimal():
    rng = random.Random(7)
    for _ in range(50):
        x, y = rng.randrange(10**12), rng.randrange(10**12)
        got = to_text(schoolbook_mul(nat(x), nat(y), CostLedger()))
        assert got == dec_mul(str(x), str(y))


def test_schoolbook_exhaustive_two_digit_by_repeated_addition():
    led = CostLedger()
    for x in range(100):
        a = nat(x)
        acc = nat(0)
        for y in range(100):
            assert schoolbook_mul(a, nat(y), led) == acc
            assert schoolbook_mul(nat(y), a, led) == acc
            acc = add(acc, a, led)


@given(same_base_pair(max_digits=25))
def test_schoolbook_matches_int(pair):
    a, b = pair
    led = CostLedger()
    prod = schoolbook_mul(a, b, led)
    assert prod.digits == tuple(to_base(a.value * b.value, a.base))
    assert from_base(prod.digits, a.base) == a.value * b.value
    assert led.single_digit_mults == len(a) * len(b)


@given(same_base_pair(max_digits=10))
def test_counters_never_decrease(pair):
    a, b = pair
    led = CostLedger()
    before = led.as_dict()
    for op in (
        lambda: add(a, b, led),
        lambda: compare(a, b, led),
        lambda: schoolbook_mul(a, b, led),
        lambda: sub(add(a, b, led), b, led),
    ):
        op()
        after = led.as_dict()
        assert all(after[k] >= before[k] for k in after)
        before = after


def test_ledger_merge():
    a = CostLedger(single_digit_mults=2, digit_adds=3)
    b = CostLedger(single_digit_mults=1, comparisons=4)
    a.merge(b)
    assert a.single_digit_mults == 3 and a.digit_adds == 3 and a.comparisons == 4
