"""Karatsuba, N-block and lookup-table multiplication of base-B naturals with operation counting."""

from .bignum import (
    CostLedger,
    Natural,
    add,
    compare,
    from_text,
    schoolbook_mul,
    shift_up,
    split_blocks,
    sub,
    to_text,
)
from .karatsuba import (
    KaratsubaConfig,
    LeafMultiplier,
    digit_leaf,
    karatsuba_leaf,
    karatsuba_mul,
    predict_leaf_products,
    schoolbook_leaf,
)
from .cost_model import ModelParams, figure1_curve, predicted_vs_measured, rsa_scenario
from .nblock import ProductPlan, ProductTerm, count_assembly_ops, make_plan, nblock_mul
from .strategies import ALGORITHMS, multiply
from .table import (
    ProductTable,
    as_leaf_multiplier,
    generate_table,
    load_table,
    save_table,
    table_lookup,
    verify_table,
)

__all__ = [
    "ALGORITHMS",
    "ModelParams",
    "figure1_curve",
    "multiply",
    "predicted_vs_measured",
    "rsa_scenario",
    "CostLedger",
    "KaratsubaConfig",
    "LeafMultiplier",
    "Natural",
    "ProductPlan",
    "ProductTable",
    "ProductTerm",
    "add",
    "as_leaf_multiplier",
    "compare",
    "count_assembly_ops",
    "digit_leaf",
    "from_text",
    "generate_table",
    "karatsuba_leaf",
    "karatsuba_mul",
    "load_table",
    "make_plan",
    "nblock_mul",
    "predict_leaf_products",
    "save_table",
    "schoolbook_leaf",
    "schoolbook_mul",
    "shift_up",
    "split_blocks",
    "sub",
    "table_lookup",
    "to_text",
    "verify_table",
]
