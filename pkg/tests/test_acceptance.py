"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section of the summary for one PASS/FAIL line per criterion.
"""

import random
from fractions import Fraction

import pytest

from karalut.bignum import CostLedger, Natural, schoolbook_mul
from karalut.cost_model import (
    ModelParams,
    figure1_curve,
    rsa_report,
    strategy_lookup_counts,
)
from karalut.karatsuba import KaratsubaConfig, karatsuba_mul, schoolbook_leaf
from karalut.nblock import count_assembly_ops, make_plan, nblock_mul
from karalut.strategies import multiply
from karalut.table import (
    as_leaf_multiplier,
    generate_table,
    load_table,
    save_table,
    to_bytes,
    verify_table,
)

from oracles import FIVE_BLOCK_SCHEMA, convolution, eval_signed

acceptance = pytest.mark.acceptance

# table digit count per base for the hybrid strategies
ORACLE_TABLE_M = {2: 4, 10: 2, 256: 1}
ORACLE_PAIRS = 10**4


def exact_width(rng, n, base):
    return Natural.from_int(rng.randrange(base ** (n - 1), base**n), base)


def oracle_configs(table):
    yield "school", {}
    yield "karatsuba", {"leaf_digits": 1}
    for N in (1, 2, 3, 4):
        yield "nblock", {"N": N}
    yield "hybrid-karatsuba", {"table": table}
    yield "hybrid-nblock", {"table": table}


@acceptance(1, "oracle equivalence across all algorithms")
@pytest.mark.slow
@pytest.mark.parametrize("base", [2, 10, 256])
def test_oracle_equivalence(base):
    table = generate_table(base, ORACLE_TABLE_M[base])
    configs = list(oracle_configs(table))
    rng = random.Random(1000 + base)
    for _ in range(ORACLE_PAIRS):
        a = exact_width(rng, rng.randint(1, 64), base)
        b = exact_width(rng, rng.randint(1, 64), base)
        expected = a.value * b.value
        for algo, kw in configs:
            got = multiply(a, b, algo, CostLedger(), **kw)
            assert got.value == expected, (algo, kw.get("N"), a.value, b.value)


@acceptance(2, "karatsuba uses exactly 3^s single-digit products")
def test_exact_three_to_the_s():
    rng = random.Random(2)
    seen = []
    for s in range(1, 7):
        a, b = exact_width(rng, 2**s, 10), exact_width(rng, 2**s, 10)
        led = CostLedger()
        assert karatsuba_mul(a, b, KaratsubaConfig(), led).value == a.value * b.value
        seen.append(led.single_digit_mults)
    assert seen == [3, 9, 27, 81, 243, 729]


@acceptance(3, "hybrid karatsuba performs 3^(s-j) lookups and no digit products")
@pytest.mark.parametrize("s, j", [(4, 1), (5, 2), (6, 3)])
def test_hybrid_lookup_count(s, j):
    table = generate_table(2, 2**j)
    rng = random.Random(s)
    for _ in range(3):
        a, b = exact_width(rng, 2**s, 2), exact_width(rng, 2**s, 2)
        led = CostLedger()
        got = karatsuba_mul(a, b, KaratsubaConfig(table.m, as_leaf_multiplier(table)), led)
        assert got.value == a.value * b.value
        assert led.table_lookups == 3 ** (s - j)
        assert led.single_digit_mults == 0


@acceptance(4, "n-block leaf count is (N+1)+C(N+1,2)")
def test_nblock_product_count():
    rng = random.Random(4)
    counts = []
    for N in (1, 2, 3, 4):
        m = 3
        a = exact_width(rng, (N + 1) * m, 10)
        b = exact_width(rng, (N + 1) * m, 10)
        led = CostLedger()
        assert nblock_mul(a, b, N, m, schoolbook_leaf, led).value == a.value * b.value
        counts.append(led.leaf_calls)
    assert counts == [3, 6, 10, 15]


@acceptance(5, "five-block assembly schema and its 34 block operations")
def test_five_block_schema():
    plan = make_plan(4)
    assert [plan.render(p) for p in range(9)] == [FIVE_BLOCK_SCHEMA[p] for p in range(9)]
    rng = random.Random(5)
    for _ in range(10**3):
        xs = [rng.randrange(-(10**9), 10**9) for _ in range(5)]
        ys = [rng.randrange(-(10**9), 10**9) for _ in range(5)]
        for p in range(9):
            from_plan = sum(sign * term.evaluate(xs, ys) for sign, term in plan.schema[p])
            by_hand = eval_signed(FIVE_BLOCK_SCHEMA[p], xs, ys)
            assert from_plan == by_hand == convolution(xs, ys, p)
    assert count_assembly_ops(4).total == 34


@acceptance(6, "halving needs fewer lookups than block splitting")
def test_strategy_comparison():
    assert strategy_lookup_counts(1) == (3, 3)
    for k in range(2, 11):
        kara, block = strategy_lookup_counts(k)
        assert kara == 3**k
        assert block == 2**k + (2**k) * (2**k - 1) // 2
        assert kara < block


@acceptance(7, "cost curve for N=6 in exact rationals")
def test_figure1_curve():
    values = [figure1_curve(6, k) for k in range(7)]
    assert all(isinstance(v, (int, Fraction)) for v in values)
    assert values == [64, 96, 144, 216, 324, 486, 729]
    assert all(b / a == Fraction(3, 2) for a, b in zip(values, values[1:]))


@acceptance(8, "RSA-sized scenario figures")
def test_rsa_scenario():
    r = rsa_report()
    assert r["hybrid_cost"].exact == 4374
    assert r["hybrid_cost"].paper_estimate == 4200
    assert r["flat_lookup_cost"].paper_estimate == 42500
    assert r["flat_factor"].paper_estimate == 85
    assert r["table_entries"].exact == 10**12
    assert 1.5e13 <= r["table_bytes_estimate"].exact <= 2.5e13
    assert r["table_bytes_estimate"].paper_estimate == 20 * 10**12


@acceptance(9, "table verification, round trip and file size")
def test_table_integrity(tmp_path):
    cases = [(10, 1)] + [(2, m) for m in (1, 2, 3, 4)]
    for base, m in cases:
        table = generate_table(base, m)
        report = verify_table(table, exhaustive=True)
        assert report.ok and report.checked == base ** (2 * m)
        path = tmp_path / f"b{base}m{m}.klut"
        size = save_table(table, path)
        assert size == path.stat().st_size
        loaded = load_table(path)
        assert loaded == table
        assert to_bytes(loaded) == path.read_bytes()
        if (base, m) == (10, 1):
            assert size == 213


@acceptance(10, "lookup time ratio is display-only")
def test_lookup_time_ratio_does_not_change_counts():
    rows = [dict(ModelParams(n=64, m=2, k=5, lookup_time_ratio=r).predictions()) for r in
            (Fraction(1, 5), Fraction(1, 2), Fraction(1))]
    for row in rows:
        row.pop("lookup_mult_equivalent")
    assert rows[0] == rows[1] == rows[2]
    assert ModelParams(n=64).lookup_time_ratio == Fraction(1, 5)
