# src/mixers/ppm.py
"""Misturador de permutação parcial (PPM) de duas variáveis.

Em código Gray, |k,k+1⟩ e |k+1,k⟩ diferem em exatamente dois bits (o mesmo
bit j em cada registrador). Cada par recebe um A_φ entre esses bits,
controlado nos demais bits, que são iguais nos dois estados.
"""
from __future__ import annotations
from typing import List
import logging

from src.core.circuits.gates import Gate, aphi, caphi, cnot
from src.core.config import get_settings
from src.core.encodings.codes import gray
from src.core.errors import ContractError
from src.core.types.code import CodeKind, CodeSpec
from .design import MixerDesign
from .library import GateTemplate

logger = logging.getLogger(__name__)

PPM_MAX_D = 16


def _pair_gate(k: int, n: int, angle: float) -> Gate:
    low, high = gray(k), gray(k + 1)
    j = (low ^ high).bit_length() - 1
    a, b = j, n + j
    controls, polarity = [], []
    for reg in (0, n):
        for i in range(n):
            if i == j:
                continue
            controls.append(reg + i)
            polarity.append((low >> i) & 1)
    if not controls:
        return aphi(a, b, angle)
    return caphi(a, b, controls, angle, polarity)


def sb_to_gray_layer(n: int, offset: int = 0) -> List[Gate]:
    """CNOTs que levam SB a Gray num registrador: b_i ^= b_{i+1}, i crescente."""
    return [cnot(offset + i + 1, offset + i) for i in range(n - 1)]


def ppm_construct(d: int, code: CodeSpec) -> MixerDesign:
    """PPM para duas variáveis de cardinalidade ``d`` (Gray ou SB)."""
    if not 2 <= d <= PPM_MAX_D:
        raise ContractError(f"ppm_construct exige 2 <= d <= {PPM_MAX_D}, recebido {d}")
    if code.kind not in (CodeKind.GRAY, CodeKind.SB):
        raise ContractError(f"ppm_construct aceita apenas gray ou sb, recebido {code.label}")
    n = code.n_qubits(d)
    angle = get_settings().generic_angle
    gates = [_pair_gate(k, n, angle) for k in range(d - 1)]
    basis: List[Gate] = []
    if code.kind == CodeKind.SB:
        basis = sb_to_gray_layer(n, 0) + sb_to_gray_layer(n, n)
    design = MixerDesign(gates, 2 * n, d, code, variables=("a", "b"), kind="ppm", basis_change=basis)
    good = set(design.valid_states())
    certificate = set()
    for g in gates:
        for u, v in GateTemplate.of(g, 2 * n).edges:
            if basis:
                u, v = sorted((_gray_state_to_sb(u, n), _gray_state_to_sb(v, n)))
            if u in good and v in good:
                certificate.add((u, v))
    design.certificate = sorted(certificate)
    logger.debug("ppm_construct(d=%d, %s): %d portas", d, code.label, len(gates))
    return design


def _gray_inverse(w: int) -> int:
    k = 0
    while w:
        k ^= w
        w >>= 1
    return k


def _gray_state_to_sb(state: int, n: int) -> int:
    mask = (1 << n) - 1
    return _gray_inverse(state & mask) | (_gray_inverse(state >> n) << n)
