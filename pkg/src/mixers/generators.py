# src/mixers/generators.py
"""Hamiltonianos geradores de misturadores: shift, ring e SPPM."""
from __future__ import annotations
from typing import Sequence

from src.core.dqir.domain import DomainSpec
from src.core.dqir.operator import OperatorPoly
from src.core.dqir.primitives import OneWayTransfer, SymmetricTransfer
from src.core.errors import ContractError

GENERATOR_KINDS = ("shift", "ring", "sppm")


def shift_generator(domain: DomainSpec, var: str) -> OperatorPoly:
    """Σ_{k≥1} T^(k↔k−1)."""
    d = domain.d(var)
    return OperatorPoly.sum_of(
        domain, (OperatorPoly.primitive(domain, var, SymmetricTransfer(k - 1, k)) for k in range(1, d))
    )


def ring_generator(domain: DomainSpec, var: str) -> OperatorPoly:
    d = domain.d(var)
    op = shift_generator(domain, var)
    if d > 2:
        op = op + OperatorPoly.primitive(domain, var, SymmetricTransfer(0, d - 1))
    return op


def sppm_generator(domain: DomainSpec, a: str, b: str) -> OperatorPoly:
    """Σ_k (|k⟩⟨k−1| ⊗ |k−1⟩⟨k| + |k−1⟩⟨k| ⊗ |k⟩⟨k−1|)."""
    d = domain.d(a)
    if domain.d(b) != d:
        raise ContractError(f"SPPM exige cardinalidades iguais: {d} vs {domain.d(b)}")
    parts = []
    for k in range(1, d):
        parts.append(OperatorPoly.product(domain, {a: OneWayTransfer(k, k - 1), b: OneWayTransfer(k - 1, k)}))
        parts.append(OperatorPoly.product(domain, {a: OneWayTransfer(k - 1, k), b: OneWayTransfer(k, k - 1)}))
    return OperatorPoly.sum_of(domain, parts)


def mixer_generator(kind: str, domain: DomainSpec, variables: Sequence[str]) -> OperatorPoly:
    """Gerador somado sobre as variáveis (shift/ring) ou sobre o par (sppm)."""
    variables = list(variables)
    if not variables:
        raise ContractError("Gerador exige ao menos uma variável")
    for v in variables:
        if domain.d(v) < 2:
            raise ContractError(f"{v}: gerador exige d >= 2")
    if kind == "sppm":
        if len(variables) != 2:
            raise ContractError("SPPM exige exatamente duas variáveis")
        return sppm_generator(domain, *variables)
    if kind == "shift":
        return OperatorPoly.sum_of(domain, (shift_generator(domain, v) for v in variables))
    if kind == "ring":
        return OperatorPoly.sum_of(domain, (ring_generator(domain, v) for v in variables))
    raise ContractError(f"Gerador desconhecido: {kind}")
