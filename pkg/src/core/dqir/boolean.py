# src/core/dqir/boolean.py
"""Composição booleana de Hamiltonianos que representam funções {0,1}."""
from __future__ import annotations
from typing import Optional, Tuple
import logging

import numpy as np

from src.core.config import Settings
from src.core.errors import ContractError
from .operator import OperatorPoly

logger = logging.getLogger(__name__)

_DEFAULTS = Settings()
_CHECK_LIMIT = 2 ** 22  # acima disso a checagem booleana é pulada

CONNECTIVES = ("not", "and", "or", "xor", "implies", "linear")


def is_boolean(op: OperatorPoly, tol: Optional[float] = None) -> bool:
    """Verdadeiro se ``op`` é diagonal com autovalores em {0,1}."""
    tol = _DEFAULTS.bool_tol if tol is None else tol
    if not op.is_diagonal():
        return False
    if op.domain.n_states > _CHECK_LIMIT:
        logger.warning("Checagem booleana pulada: %d estados", op.domain.n_states)
        return True
    vals = op.diagonal()
    if np.any(np.abs(vals.imag) > tol):
        return False
    re = vals.real
    return bool(np.all((np.abs(re) <= tol) | (np.abs(re - 1.0) <= tol)))


def require_boolean(op: OperatorPoly, name: str = "operando") -> None:
    if not is_boolean(op):
        raise ContractError(f"{name} não representa função booleana (autovalores fora de {{0,1}})")


def compose_bool(
    connective: str,
    f: OperatorPoly,
    g: Optional[OperatorPoly] = None,
    weights: Optional[Tuple[complex, complex]] = None,
) -> OperatorPoly:
    """Hamiltoniano da função composta.

    ¬f = I − H_f; f∧g = H_f H_g; f∨g = H_f + H_g − H_f H_g;
    f⊕g = H_f + H_g − 2 H_f H_g; f⇒g = I − H_f + H_f H_g;
    linear = a H_f + b H_g (pesos arbitrários).
    """
    if connective not in CONNECTIVES:
        raise ContractError(f"Conectivo desconhecido: {connective}")

    if connective == "linear":
        if g is None:
            raise ContractError("linear exige dois operandos")
        a, b = weights if weights is not None else (1.0, 1.0)
        if complex(a).imag != 0 or complex(b).imag != 0:
            logger.warning("Combinação linear com pesos complexos: resultado pode não ser Hermitiano")
        return (f.scale(a) + g.scale(b)).simplify()

    require_boolean(f, "f")
    identity = OperatorPoly.identity(f.domain)
    if connective == "not":
        return identity - f

    if g is None:
        raise ContractError(f"{connective} exige dois operandos")
    require_boolean(g, "g")
    fg = f * g
    if connective == "and":
        return fg
    if connective == "or":
        return f + g - fg
    if connective == "xor":
        return f + g - fg.scale(2.0)
    return identity - f + fg
