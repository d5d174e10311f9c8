# src/penalties/domain.py
"""Penalidades no nível do domínio (independentes de codificação)."""
from __future__ import annotations
from itertools import combinations, product
from typing import Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from src.core.config import Settings, get_settings
from src.core.dqir.domain import DomainSpec
from src.core.dqir.functions import eq
from src.core.dqir.operator import OperatorPoly
from src.core.dqir.primitives import GeneralLocal, Indicator, Value
from src.core.errors import ContractError

logger = logging.getLogger(__name__)

Coeffs = Union[Mapping[str, Sequence[float]], Sequence[Sequence[float]]]


def f_perm(domain: DomainSpec, variables: Optional[Sequence[str]] = None) -> OperatorPoly:
    """Σ_{α≠β} Σ_k 𝒫⁽ᵏ⁾_α 𝒫⁽ᵏ⁾_β (pares ordenados)."""
    variables = list(domain.ids if variables is None else variables)
    dims = {domain.d(v) for v in variables}
    if len(dims) > 1:
        raise ContractError(f"F_perm exige cardinalidades iguais, recebido {sorted(dims)}")
    pairs = [eq(domain, a, b) for a, b in combinations(variables, 2)]
    return OperatorPoly.sum_of(domain, pairs).scale(2.0)


def _coeff_map(domain: DomainSpec, coeffs: Coeffs) -> dict:
    if isinstance(coeffs, Mapping):
        out = {str(v): tuple(float(c) for c in cs) for v, cs in coeffs.items()}
    else:
        coeffs = list(coeffs)
        if len(coeffs) != len(domain):
            raise ContractError(f"Esperado {len(domain)} listas de coeficientes, recebido {len(coeffs)}")
        out = {v: tuple(float(c) for c in cs) for v, cs in zip(domain.ids, coeffs)}
    for v, cs in out.items():
        if len(cs) != domain.d(v):
            raise ContractError(f"Coeficientes de {v} devem ter {domain.d(v)} entradas, recebido {len(cs)}")
    return out


def f_sum(domain: DomainSpec, coeffs: Coeffs, target: float) -> OperatorPoly:
    """(Σ_α 𝒜_α − D)²."""
    cmap = _coeff_map(domain, coeffs)
    s = OperatorPoly.sum_of(domain, (OperatorPoly.primitive(domain, v, Value(cs)) for v, cs in cmap.items()))
    shifted = s - target
    return shifted * shifted


def f_lin(
    domain: DomainSpec,
    row: Mapping[str, float],
    bound: float,
    support_cap: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> OperatorPoly:
    """1 nas atribuições do suporte da linha que violam Σ A_α x_α ≤ b."""
    settings = settings or get_settings()
    cap = settings.f_lin_support_cap if support_cap is None else support_cap
    support = [v for v in domain.ids if row.get(v, 0) != 0]
    unknown = set(row) - set(domain.ids)
    if unknown:
        raise ContractError(f"Linha referencia variáveis desconhecidas: {sorted(unknown)}")
    if len(support) > cap:
        raise ContractError(
            f"Suporte da linha ({len(support)} variáveis) excede o limite {cap}: "
            "a enumeração de atribuições violadoras cresce exponencialmente"
        )
    if not support:
        return OperatorPoly.identity(domain) if 0 > bound else OperatorPoly.zero(domain)
    parts = []
    for x in product(*(range(domain.d(v)) for v in support)):
        lhs = sum(row[v] * xi for v, xi in zip(support, x))
        if lhs > bound + 1e-12:
            parts.append(OperatorPoly.product(domain, {v: Indicator(xi) for v, xi in zip(support, x)}))
    op = OperatorPoly.sum_of(domain, parts)
    logger.debug("f_lin: %d atribuições violadoras -> %d termos", len(parts), op.n_terms)
    return op


def penalty_exchange(domain: DomainSpec, var: str, d_new: int) -> Tuple[DomainSpec, OperatorPoly]:
    """Amplia ``var`` para ``d_new`` níveis e devolve Σ_{k≥d} 𝒫⁽ᵏ⁾ no novo domínio."""
    d_old = domain.d(var)
    if d_new <= d_old:
        raise ContractError(f"d_new ({d_new}) deve exceder d atual ({d_old})")
    new_domain = DomainSpec(tuple((v, d_new if v == var else d) for v, d in domain.variables))
    penalty = OperatorPoly.primitive(new_domain, var, Value(tuple(0.0 if k < d_old else 1.0 for k in range(d_new))))
    return new_domain, penalty


def embed_operator(op: OperatorPoly, new_domain: DomainSpec) -> OperatorPoly:
    """Reescreve ``op`` num domínio com cardinalidades maiores (níveis novos → 0)."""
    if new_domain.ids != op.domain.ids:
        raise ContractError("Domínios com variáveis diferentes")
    parts = []
    for t in op.terms:
        factors = {}
        for var, m in t.factors:
            d_new = new_domain.d(var)
            if d_new < m.shape[0]:
                raise ContractError(f"{var}: nova cardinalidade {d_new} menor que {m.shape[0]}")
            padded = np.zeros((d_new, d_new), dtype=complex)
            padded[: m.shape[0], : m.shape[1]] = m
            factors[var] = GeneralLocal(padded)
        parts.append(OperatorPoly.product(new_domain, factors, t.coeff))
    return OperatorPoly.sum_of(new_domain, parts)
