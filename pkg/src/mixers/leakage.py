# src/mixers/leakage.py
"""Vazamento ℒ = 1 − ⟨ψ₀|U†P̂U|ψ₀⟩ para projetores viáveis diagonais."""
from __future__ import annotations
from typing import Iterable, Optional, Union
import logging
import math

import numpy as np

from src.core.circuits.circuit import Circuit
from src.core.config import Settings, get_settings
from src.core.errors import ContractError
from src.core.simulator.dense import apply_circuit, check_dim
from .design import MixerDesign

logger = logging.getLogger(__name__)


def _as_mask(mask: Union[np.ndarray, Iterable[int]], dim: int) -> np.ndarray:
    arr = np.asarray(list(mask) if not isinstance(mask, np.ndarray) else mask)
    if arr.shape == (dim,):
        return arr.astype(bool)
    out = np.zeros(dim, dtype=bool)
    out[arr.astype(np.int64)] = True
    return out


def _evolve(u: Union[Circuit, np.ndarray], states: np.ndarray) -> np.ndarray:
    if isinstance(u, Circuit):
        return apply_circuit(u, states)
    return np.asarray(u, dtype=complex) @ states


def leakage_many(
    u: Union[Circuit, np.ndarray],
    mask: Union[np.ndarray, Iterable[int]],
    states: np.ndarray,
    settings: Optional[Settings] = None,
) -> np.ndarray:
    """Vazamento de cada coluna de ``states`` (estados viáveis normalizados)."""
    settings = settings or get_settings()
    states = np.asarray(states, dtype=complex)
    dim = states.shape[0]
    check_dim(dim, settings)
    if isinstance(u, Circuit) and (1 << u.n_qubits) != dim:
        raise ContractError(f"Circuito de {u.n_qubits} qubits para estado de dimensão {dim}")
    keep = _as_mask(mask, dim)
    outside = np.sum(np.abs(states[~keep]) ** 2, axis=0)
    if np.any(outside > settings.equiv_tol):
        raise ContractError("Vazamento só é definido a partir de um estado viável (P̂ψ₀ = ψ₀)")
    out = _evolve(u, states)
    inside = np.sum(np.abs(out[keep]) ** 2, axis=0)
    return np.clip(1.0 - inside, 0.0, 1.0)


def leakage(
    u: Union[Circuit, np.ndarray],
    mask: Union[np.ndarray, Iterable[int]],
    psi0: np.ndarray,
    settings: Optional[Settings] = None,
) -> float:
    psi0 = np.asarray(psi0, dtype=complex)
    return float(leakage_many(u, mask, psi0[:, None], settings)[0])


def basis_states(indices: Iterable[int], dim: int) -> np.ndarray:
    idx = np.asarray(list(indices), dtype=np.int64)
    out = np.zeros((dim, len(idx)), dtype=complex)
    out[idx, np.arange(len(idx))] = 1.0
    return out


def uniform_superposition(indices: Iterable[int], dim: int) -> np.ndarray:
    idx = np.asarray(list(indices), dtype=np.int64)
    out = np.zeros(dim, dtype=complex)
    out[idx] = 1.0 / math.sqrt(len(idx))
    return out


def max_leakage(
    design: MixerDesign,
    mask: Optional[Union[np.ndarray, Iterable[int]]] = None,
    n_angles: Optional[int] = None,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """Maior vazamento a partir de cada estado viável da base em ângulos aleatórios.

    Sem ``mask`` usa os estados válidos do misturador.
    """
    settings = settings or get_settings()
    n_angles = settings.n_random_angles if n_angles is None else n_angles
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    dim = 1 << design.n_qubits
    keep = _as_mask(design.valid_states() if mask is None else mask, dim)
    starts = basis_states(np.flatnonzero(keep), dim)
    worst = 0.0
    for _ in range(n_angles):
        angles = rng.uniform(0.0, 2.0 * math.pi, size=len(design.gates))
        circuit = design.circuit(angles, expand=False)
        worst = max(worst, float(leakage_many(circuit, keep, starts, settings).max(initial=0.0)))
    logger.debug("max_leakage(%s, d=%d): %.3e em %d ângulos", design.kind, design.d, worst, n_angles)
    return worst
