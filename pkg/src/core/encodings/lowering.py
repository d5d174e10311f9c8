# src/core/encodings/lowering.py
"""Lowering de operadores DQIR para polinômios de Pauli.

Cada elemento |k⟩⟨l| vira ⊗_{i∈C} |b_i(k)⟩⟨b_i(l)| sobre o subconjunto C
de qubits do registrador, com a substituição

    |0⟩⟨0| = (I+Z)/2   |1⟩⟨1| = (I−Z)/2   |0⟩⟨1| = (X+iY)/2   |1⟩⟨0| = (X−iY)/2
"""
from __future__ import annotations
from functools import lru_cache
from typing import Dict, Tuple
import logging

import numpy as np

from src.core.dqir.operator import OperatorPoly, ProductTerm
from src.core.dqir.primitives import PrimitiveFactor
from src.core.errors import ContractError
from src.core.types.code import CodeSpec
from .assignment import EncodingAssignment
from .codes import bitmask, codeword
from .pauli import PauliKey, PauliPoly

logger = logging.getLogger(__name__)

# (ket_bit, bra_bit) de |ket⟩⟨bra| -> [(coeff, x, z)] para um qubit
_SINGLE = {
    (0, 0): ((0.5, 0, 0), (0.5, 0, 1)),
    (1, 1): ((0.5, 0, 0), (-0.5, 0, 1)),
    (0, 1): ((0.5, 1, 0), (0.5j, 1, 1)),
    (1, 0): ((0.5, 1, 0), (-0.5j, 1, 1)),
}


@lru_cache(maxsize=None)
def lower_element(k: int, l: int, d: int, code: CodeSpec) -> Tuple[Tuple[PauliKey, complex], ...]:
    """|k⟩⟨l| em coordenadas locais do registrador, como tupla (chave, coeff).

    Para |0⟩⟨1| = (X+iY)/2 o fator de Y segue a convenção Y=[[0,-i],[i,0]]:
    (X + iY)/2 = [[0,1],[0,0]].
    """
    wk, wl = codeword(k, d, code), codeword(l, d, code)
    acc: Dict[PauliKey, complex] = {(0, 0): 1.0 + 0j}
    for q in sorted(bitmask((k, l) if k != l else (k,), d, code)):
        bk, bl = (wk >> q) & 1, (wl >> q) & 1
        nxt: Dict[PauliKey, complex] = {}
        for (x, z), c in acc.items():
            for cq, xq, zq in _SINGLE[(bk, bl)]:
                key = (x | (xq << q), z | (zq << q))
                nxt[key] = nxt.get(key, 0j) + c * cq
        acc = nxt
    return tuple((key, c) for key, c in acc.items() if c != 0)


def _lower_matrix(m: np.ndarray, d: int, code: CodeSpec) -> Dict[PauliKey, complex]:
    out: Dict[PauliKey, complex] = {}
    rows, cols = np.nonzero(m)
    for k, l in zip(rows.tolist(), cols.tolist()):
        entry = complex(m[k, l])
        for key, c in lower_element(k, l, d, code):
            out[key] = out.get(key, 0j) + entry * c
    return out


def lower_primitive(var: str, factor: PrimitiveFactor, assignment: EncodingAssignment) -> PauliPoly:
    d = assignment.domain.d(var)
    factor.validate(d)
    local = _lower_matrix(factor.matrix(d), d, assignment.code(var))
    return PauliPoly(assignment.width(var), local).simplify().shifted(
        assignment.offset(var), assignment.n_qubits
    )


def _lower_term(term: ProductTerm, assignment: EncodingAssignment, offsets: Dict[str, int]) -> Dict[PauliKey, complex]:
    acc: Dict[PauliKey, complex] = {(0, 0): term.coeff}
    for var, m in term.factors:
        d = assignment.domain.d(var)
        off = offsets[var]
        local = _lower_matrix(m, d, assignment.code(var))
        nxt: Dict[PauliKey, complex] = {}
        for (x, z), c in acc.items():
            for (lx, lz), lc in local.items():
                key = (x | (lx << off), z | (lz << off))
                nxt[key] = nxt.get(key, 0j) + c * lc
        acc = nxt
    return acc


def lower_operator(op: OperatorPoly, assignment: EncodingAssignment) -> PauliPoly:
    if op.domain != assignment.domain:
        raise ContractError("Operador e atribuição de códigos com domínios diferentes")
    offsets = assignment.offsets
    total: Dict[PauliKey, complex] = {}
    for term in op.terms:
        for key, c in _lower_term(term, assignment, offsets).items():
            total[key] = total.get(key, 0j) + c
    poly = PauliPoly(assignment.n_qubits, total).simplify()
    logger.debug("lower_operator: %d termos DQIR -> %d strings de Pauli", op.n_terms, len(poly))
    return poly


def restricted_matrix(poly: PauliPoly, assignment: EncodingAssignment) -> np.ndarray:
    """Matriz de ``poly`` restrita às palavras válidas, na ordem do índice DQIR."""
    states = assignment.valid_states()
    return poly.matrix_elements(states, states)
