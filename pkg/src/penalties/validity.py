# src/penalties/validity.py
"""Penalidades de validade por variável, definidas já no espaço de qubits."""
from __future__ import annotations
from typing import Optional
import logging

from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.codes import codeword, gray
from src.core.encodings.pauli import PauliPoly
from src.core.errors import ContractError
from src.core.types.code import CodeKind, CodeSpec

logger = logging.getLogger(__name__)


def _complement_of(n_qubits: int, words, offset: int = 0, total: Optional[int] = None) -> PauliPoly:
    """I − Σ_w |w⟩⟨w| sobre ``n_qubits`` qubits deslocados de ``offset``."""
    total = n_qubits + offset if total is None else total
    qubits = list(range(offset, offset + n_qubits))
    poly = PauliPoly.identity(total)
    for w in words:
        bits = [(w >> j) & 1 for j in range(n_qubits)]
        poly = poly - PauliPoly.projector(total, qubits, bits)
    return poly


def f_ss(d: int, code: CodeSpec, allow_unary: bool = False) -> PauliPoly:
    """Σ_{palavras inválidas} |w⟩⟨w| no registrador de uma variável.

    Para block unary só palavras locais inválidas são penalizadas; estados
    com vários blocos ativos ficam a cargo de misturadores que preservam
    validade. Para unary exige ``allow_unary``.
    """
    n = code.n_qubits(d)
    if code.kind == CodeKind.UNARY:
        if not allow_unary:
            raise ContractError("F_SS para unary exige allow_unary=True (projetor de peso de Hamming ≠ 1)")
        return _complement_of(n, [codeword(k, d, code) for k in range(d)])
    if code.kind != CodeKind.BLOCK_UNARY:
        poly = _complement_of(n, [codeword(k, d, code) for k in range(d)])
        logger.debug("f_ss(%s, d=%d): %d termos", code.label, d, len(poly))
        return poly
    nb = code.block_qubits
    blocks = code.n_blocks(d)
    poly = PauliPoly.zero(n)
    for b in range(blocks):
        used = min(code.g, d - b * code.g)
        local_words = [v if code.local == CodeKind.SB else gray(v) for v in range(used + 1)]
        poly = poly + _complement_of(nb, local_words, offset=b * nb, total=n)
    return poly


def f_ss_for(var: str, assignment: EncodingAssignment, allow_unary: bool = False) -> PauliPoly:
    """F_SS da variável posicionado no registrador completo."""
    local = f_ss(assignment.domain.d(var), assignment.code(var), allow_unary)
    return local.shifted(assignment.offset(var), assignment.n_qubits)
