# src/core/dqir/controlled.py
"""Geradores controlados e cálculo de funções em registradores."""
from __future__ import annotations
from typing import Sequence

import numpy as np
from scipy.linalg import schur

from src.core.errors import ContractError, DomainMismatchError
from .boolean import require_boolean
from .domain import DomainSpec
from .operator import OperatorPoly
from .primitives import GeneralLocal, Indicator, SymmetricTransfer


def controlled_generator(f: OperatorPoly, target: OperatorPoly) -> OperatorPoly:
    """H_f ⊗ H: exp(−iφ·gen) age como exp(−iφH) onde f=1 e como identidade onde f=0."""
    if f.domain != target.domain:
        raise DomainMismatchError("f e alvo devem compartilhar o DomainSpec")
    require_boolean(f, "f")
    overlap = set(f.support()) & set(target.support())
    if overlap:
        raise DomainMismatchError(f"f e alvo atuam nas mesmas variáveis: {sorted(overlap)}")
    return f * target


def permutation_generator(domain: DomainSpec, var: str, perm: Sequence[int]) -> OperatorPoly:
    """H_τ Hermitiano com exp(−iπ/2·H_τ) = U_τ, onde U_τ|a⟩ = |τ(a)⟩."""
    d = domain.d(var)
    if sorted(perm) != list(range(d)):
        raise ContractError(f"Permutação inválida para d={d}: {list(perm)}")
    u = np.zeros((d, d), dtype=complex)
    for a, t in enumerate(perm):
        u[t, a] = 1.0
    # forma de Schur complexa de matriz normal é diagonal
    t_mat, z = schur(u, output="complex")
    phases = np.angle(np.diag(t_mat))
    h = z @ np.diag(-2.0 / np.pi * phases) @ z.conj().T
    h = 0.5 * (h + h.conj().T)
    h[np.abs(h) < 1e-14] = 0.0
    return OperatorPoly.primitive(domain, var, GeneralLocal(h))


def transposition_generator(domain: DomainSpec, var: str, k: int, l: int) -> OperatorPoly:
    """Forma fechada para a troca k↔l: T^(k↔l) − 𝒫⁽ᵏ⁾ − 𝒫⁽ˡ⁾."""
    return (
        OperatorPoly.primitive(domain, var, SymmetricTransfer(k, l))
        - OperatorPoly.primitive(domain, var, Indicator(k))
        - OperatorPoly.primitive(domain, var, Indicator(l))
    )


def compute_into_register(f: OperatorPoly, var: str, perm: Sequence[int]) -> OperatorPoly:
    """Gerador de |x⟩|a⟩ → |x⟩|τ^{f(x)}(a)⟩ com φ = π/2."""
    return controlled_generator(f, permutation_generator(f.domain, var, perm))
