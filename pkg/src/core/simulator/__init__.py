# src/core/simulator/__init__.py
from .dense import (
    DenseOperator,
    apply_circuit,
    apply_gate,
    apply_local,
    check_dim,
    circuit_unitary,
    exp_check,
    gate_matrix,
    pauli_matrix,
    projector_expectation,
    restricted_equiv,
    to_dense,
)

__all__ = [
    "DenseOperator",
    "to_dense",
    "gate_matrix",
    "apply_local",
    "apply_gate",
    "apply_circuit",
    "circuit_unitary",
    "pauli_matrix",
    "restricted_equiv",
    "exp_check",
    "projector_expectation",
    "check_dim",
]
