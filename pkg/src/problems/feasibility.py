# src/problems/feasibility.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence
import logging

import numpy as np

from src.core.config import Settings, get_settings
from src.core.dqir.boolean import is_boolean
from src.core.dqir.domain import DomainSpec
from src.core.dqir.functions import ad
from src.core.dqir.operator import OperatorPoly
from src.core.dqir.primitives import Indicator, Value
from src.core.encodings.assignment import EncodingAssignment
from src.core.errors import ContractError, DimensionCapError

logger = logging.getLogger(__name__)

FEASIBILITY_KINDS = ("all_valid", "permutation", "sum_equals")


@dataclass(frozen=True, eq=False)
class FeasibilityProjector:
    """Projetor diagonal {0,1} sobre o conjunto viável."""

    op: OperatorPoly
    kind: str

    def __post_init__(self):
        if not is_boolean(self.op):
            raise ContractError(f"Projetor '{self.kind}' não é diagonal com autovalores em {{0,1}}")

    @property
    def domain(self) -> DomainSpec:
        return self.op.domain

    def mask(self) -> np.ndarray:
        """Vetor 0/1 sobre os estados clássicos (índice DQIR)."""
        return np.rint(self.op.diagonal().real).astype(np.int8)

    def rank(self) -> int:
        return int(self.mask().sum())

    def contains(self, x: Sequence[int]) -> bool:
        return abs(self.op.evaluate(x) - 1.0) < 1e-9

    def feasible_states(self) -> np.ndarray:
        return np.flatnonzero(self.mask())

    def encoded(self, assignment: EncodingAssignment, settings: Optional[Settings] = None) -> np.ndarray:
        """Máscara 0/1 sobre os 2^n estados de qubits: palavras válidas e viáveis."""
        if assignment.domain != self.domain:
            raise ContractError("Atribuição de códigos com domínio diferente do projetor")
        settings = settings or get_settings()
        dim = 1 << assignment.n_qubits
        if dim > settings.dense_cap_dim:
            raise DimensionCapError(dim, settings.dense_cap_dim)
        out = np.zeros(dim, dtype=np.int8)
        out[assignment.valid_states()[self.mask().astype(bool)]] = 1
        return out


def _all_valid(domain: DomainSpec) -> OperatorPoly:
    return OperatorPoly.identity(domain)


def _permutation(domain: DomainSpec, variables: Optional[Sequence[str]], n_values: Optional[int]) -> OperatorPoly:
    variables = list(domain.ids if variables is None else variables)
    m = len(variables)
    n_values = m if n_values is None else n_values
    if n_values != m:
        raise ContractError(f"Permutação exige tantos valores quanto variáveis: {n_values} vs {m}")
    dims = {domain.d(v) for v in variables}
    if len(dims) != 1:
        raise ContractError(f"Permutação exige cardinalidades iguais, recebido {sorted(dims)}")
    d = dims.pop()
    if d < m or (d != m and m > 1):
        raise ContractError(f"Permutação exige d = M, recebido d={d}, M={m}")
    op = ad(domain, variables) if m > 1 else OperatorPoly.identity(domain)
    if d > m:
        allowed = Value(tuple(1.0 if k < m else 0.0 for k in range(d)))
        for v in variables:
            op = op * OperatorPoly.primitive(domain, v, allowed)
    return op


def _sum_equals(
    domain: DomainSpec,
    target: float,
    coeffs: Optional[Mapping[str, Sequence[float]]],
    settings: Settings,
) -> OperatorPoly:
    if domain.n_states > settings.dense_cap_dim:
        raise DimensionCapError(domain.n_states, settings.dense_cap_dim)
    coeffs = coeffs or {v: tuple(range(d)) for v, d in domain.variables}
    vectors = []
    for var, d in domain.variables:
        c = np.array(coeffs.get(var, [0.0] * d), dtype=float)
        if len(c) != d:
            raise ContractError(f"Coeficientes de {var} devem ter {d} entradas")
        vectors.append(c)
    parts = []
    for x in domain.states():
        total = sum(v[xi] for v, xi in zip(vectors, x))
        if abs(total - target) < 1e-9:
            parts.append(OperatorPoly.product(domain, {var: Indicator(xi) for var, xi in zip(domain.ids, x)}))
    return OperatorPoly.sum_of(domain, parts)


def feasibility_projector(
    kind: str,
    domain: DomainSpec,
    variables: Optional[Sequence[str]] = None,
    n_values: Optional[int] = None,
    target: float = 0.0,
    coeffs: Optional[Mapping[str, Sequence[float]]] = None,
    settings: Optional[Settings] = None,
) -> FeasibilityProjector:
    """all_valid | permutation | sum_equals{target, coeffs}."""
    settings = settings or get_settings()
    if kind == "all_valid":
        op = _all_valid(domain)
    elif kind == "permutation":
        op = _permutation(domain, variables, n_values)
    elif kind == "sum_equals":
        op = _sum_equals(domain, target, coeffs, settings)
    else:
        raise ContractError(f"Tipo de viabilidade desconhecido: {kind}")
    logger.debug("feasibility_projector(%s): %d termos", kind, op.n_terms)
    return FeasibilityProjector(op, kind)
