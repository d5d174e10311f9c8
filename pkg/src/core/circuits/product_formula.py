# src/core/circuits/product_formula.py
from __future__ import annotations
from typing import List, Optional, Sequence
import logging

from src.core.config import Settings
from src.core.encodings.pauli import PauliPoly, PauliTerm, key_label
from src.core.errors import ContractError
from .circuit import Circuit
from .gates import pauli_exp

logger = logging.getLogger(__name__)

_DEFAULTS = Settings()
# acima disso a ordenação gulosa (quadrática) cai para a ordem lexicográfica
GREEDY_LIMIT = 4000


def _letters(term: PauliTerm) -> dict:
    return {q: term.letter(q) for q in term.support}


def _score(prev: dict, cand: dict) -> tuple:
    shared = prev.keys() & cand.keys()
    same = sum(1 for q in shared if prev[q] == cand[q])
    return (same, len(shared))


def order_terms(poly: PauliPoly) -> List[PauliTerm]:
    """Ordem determinística dos termos não identidade.

    Parte da ordem lexicográfica (tamanho do suporte, suporte, string) e
    encadeia gulosamente: o próximo termo é o que mais compartilha qubits com
    a mesma letra do termo anterior, depois qubits em comum; empates ficam
    com o primeiro na ordem lexicográfica.
    """
    terms = [t for t in poly.sorted_terms() if not t.is_identity]
    if len(terms) <= 2 or len(terms) > GREEDY_LIMIT:
        return terms
    letters = [_letters(t) for t in terms]
    remaining = list(range(1, len(terms)))
    order = [0]
    while remaining:
        prev = letters[order[-1]]
        best_pos, best_score = 0, None
        for pos, idx in enumerate(remaining):
            score = _score(prev, letters[idx])
            if best_score is None or score > best_score:
                best_pos, best_score = pos, score
        order.append(remaining.pop(best_pos))
    return [terms[i] for i in order]


def emit_product_formula(
    poly: PauliPoly,
    beta: float,
    expand: bool = True,
    order: Optional[Sequence[PauliTerm]] = None,
    settings: Optional[Settings] = None,
) -> Circuit:
    """Circuito Π_v exp(−iβ c_v P_v) para um PauliPoly Hermitiano.

    Termos identidade viram fase global. A contagem de portas não depende de β.
    """
    settings = settings or _DEFAULTS
    poly = poly.simplify(settings.prune_tol)
    for k, c in poly.terms.items():
        if abs(c.imag) > settings.prune_tol * max(1.0, abs(c)):
            raise ContractError(
                f"Fórmula de produto exige operador Hermitiano; coeficiente complexo em {key_label(k, poly.n_qubits)}"
            )
    circuit = Circuit(poly.n_qubits)
    identity = poly.terms.get((0, 0))
    if identity is not None:
        circuit.global_phase -= beta * identity.real
    for term in (order if order is not None else order_terms(poly)):
        if term.is_identity:
            continue
        qubits = term.support
        circuit.append(pauli_exp(qubits, "".join(term.letter(q) for q in qubits), beta * term.coeff.real))
    logger.debug("product formula: %d termos em %d qubits", len(circuit), poly.n_qubits)
    return circuit.expand() if expand else circuit
