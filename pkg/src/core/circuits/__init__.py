# src/core/circuits/__init__.py
from .circuit import Circuit, cancel_inverses, depth
from .decompose import decompose, depth_bound, depth_cost
from .gates import (
    Gate,
    GateKind,
    aphi,
    caphi,
    cnot,
    controlled_ry,
    cry,
    h,
    mcry,
    pauli_exp,
    rx,
    ry,
    rz,
    toffoli,
    x,
)
from .product_formula import emit_product_formula, order_terms
from .report import CSV_COLUMNS, DepthReport, depth_report, to_csv, write_csv

__all__ = [
    # portas
    "Gate",
    "GateKind",
    "rx",
    "ry",
    "rz",
    "h",
    "x",
    "cnot",
    "cry",
    "mcry",
    "controlled_ry",
    "aphi",
    "caphi",
    "toffoli",
    "pauli_exp",
    # circuitos
    "Circuit",
    "depth",
    "cancel_inverses",
    "decompose",
    "depth_bound",
    "depth_cost",
    # fórmulas de produto
    "emit_product_formula",
    "order_terms",
    # relatório
    "DepthReport",
    "depth_report",
    "write_csv",
    "to_csv",
    "CSV_COLUMNS",
]
