# src/core/dqir/functions.py
"""Funções multivariadas nomeadas: EQ, NEQ, AEQ, AD, CNZ e PD."""
from __future__ import annotations
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from src.core.errors import ContractError
from .domain import DomainSpec
from .operator import OperatorPoly
from .primitives import Indicator, Value, number


def indicator(domain: DomainSpec, var: str, k: int) -> OperatorPoly:
    return OperatorPoly.primitive(domain, var, Indicator(k))


def value(domain: DomainSpec, var: str, coeffs: Sequence[complex]) -> OperatorPoly:
    return OperatorPoly.primitive(domain, var, Value(coeffs))


def number_op(domain: DomainSpec, var: str) -> OperatorPoly:
    return OperatorPoly.primitive(domain, var, number(domain.d(var)))


def eq(domain: DomainSpec, a: str, b: str) -> OperatorPoly:
    """EQ(α,β) = Σ_k 𝒫⁽ᵏ⁾_α 𝒫⁽ᵏ⁾_β sobre os níveis comuns."""
    if a == b:
        raise ContractError("EQ exige duas variáveis distintas")
    common = min(domain.d(a), domain.d(b))
    terms = []
    for k in range(common):
        terms.extend(OperatorPoly.product(domain, {a: Indicator(k), b: Indicator(k)}).terms)
    return OperatorPoly(domain, tuple(terms)).simplify()


def neq(domain: DomainSpec, a: str, b: str) -> OperatorPoly:
    return OperatorPoly.identity(domain) - eq(domain, a, b)


def aeq(domain: DomainSpec, variables: Sequence[str]) -> OperatorPoly:
    """1 quando todas as variáveis assumem o mesmo valor."""
    _require_many(variables, "AEQ")
    common = min(domain.d(v) for v in variables)
    terms = []
    for k in range(common):
        terms.extend(OperatorPoly.product(domain, {v: Indicator(k) for v in variables}).terms)
    return OperatorPoly(domain, tuple(terms)).simplify()


def ad(domain: DomainSpec, variables: Sequence[str]) -> OperatorPoly:
    """1 quando todas as variáveis são distintas (projetores comutam)."""
    _require_many(variables, "AD")
    result = OperatorPoly.identity(domain)
    for a, b in combinations(variables, 2):
        result = result * neq(domain, a, b)
    return result


def cnz(domain: DomainSpec, variables: Optional[Sequence[str]] = None) -> OperatorPoly:
    """Número de variáveis com valor diferente de zero."""
    variables = list(domain.ids if variables is None else variables)
    result = OperatorPoly.constant(domain, len(variables))
    for v in variables:
        result = result - indicator(domain, v, 0)
    return result


def pd(domain: DomainSpec, edges: Iterable[Tuple[str, str]]) -> OperatorPoly:
    """Soma de NEQ sobre as arestas de um grafo de variáveis."""
    result = OperatorPoly.zero(domain)
    for a, b in edges:
        for v in (a, b):
            if v not in domain:
                raise ContractError(f"Aresta referencia variável desconhecida: {v}")
        result = result + neq(domain, a, b)
    return result


def named_function(
    name: str,
    domain: DomainSpec,
    variables: Optional[Sequence[str]] = None,
    edges: Optional[Iterable[Tuple[str, str]]] = None,
) -> OperatorPoly:
    key = name.upper()
    if key == "PD":
        if edges is None:
            raise ContractError("PD exige um grafo (lista de arestas)")
        return pd(domain, edges)
    variables = list(domain.ids if variables is None else variables)
    if key in ("EQ", "NEQ"):
        if len(variables) != 2:
            raise ContractError(f"{key} exige exatamente duas variáveis")
        return eq(domain, *variables) if key == "EQ" else neq(domain, *variables)
    if key == "AEQ":
        return aeq(domain, variables)
    if key == "AD":
        return ad(domain, variables)
    if key == "CNZ":
        return cnz(domain, variables)
    raise ContractError(f"Função nomeada desconhecida: {name}")


def _require_many(variables: Sequence[str], name: str) -> None:
    if len(variables) < 2:
        raise ContractError(f"{name} exige ao menos duas variáveis")
    if len(set(variables)) != len(variables):
        raise ContractError(f"{name} recebeu variáveis repetidas")
