# src/mixers/trotter.py
"""Misturadores aproximados: um passo de Trotter de primeira ordem."""
from __future__ import annotations
from typing import Optional

from src.core.circuits.circuit import Circuit
from src.core.circuits.product_formula import emit_product_formula
from src.core.config import Settings, get_settings
from src.core.dqir.operator import OperatorPoly
from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.lowering import lower_operator
from src.core.errors import ContractError


def trotter_mixer(
    generator: OperatorPoly,
    assignment: EncodingAssignment,
    beta: float,
    expand: bool = True,
    settings: Optional[Settings] = None,
) -> Circuit:
    """Π_v exp(−iβ G_v) sobre os termos de Pauli do gerador codificado."""
    settings = settings or get_settings()
    if not generator.is_hermitian(settings.bool_tol):
        raise ContractError("Gerador do misturador deve ser Hermitiano")
    poly = lower_operator(generator, assignment).simplify(settings.prune_tol)
    return emit_product_formula(poly, beta, expand=expand, settings=settings)
