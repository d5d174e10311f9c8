# src/core/circuits/decompose.py
"""Expansão de macros em rotações de 1 qubit + CNOT.

Convenções (unitárias pretendidas, c = cos θ/2, s = sin θ/2):
  - ``cry``: identidade com o controle inativo; R_Y(θ)·X = [[−s, c], [c, s]]
    no alvo com o controle ativo. Um único CNOT, profundidade 3.
  - ``mcry``: R_Y(θ) exato no alvo quando todos os controles estão ativos,
    via rotação uniformemente controlada em código Gray; profundidade 2^{k+1}.
  - ``aphi``: fixa |00⟩ e |11⟩ e aplica [[−s, c], [c, s]] em (|a=1,b=0⟩, |a=0,b=1⟩).
  - ``caphi``: rotação de Givens [[c, −s], [s, c]] em (|a=1,b=0⟩, |a=0,b=1⟩)
    quando os controles estão ativos.
  - ``toffoli``: Nielsen & Chuang com T = e^{iπ/8}·R_Z(π/4).
  - ``pauli_exp``: exp(−iθP) por mudança de base e escada de CNOTs.
"""
from __future__ import annotations
from functools import lru_cache
from typing import Sequence, Tuple
import math

from src.core.errors import ContractError
from .circuit import Circuit
from .gates import Gate, GateKind, cnot, h, mcry, rx, ry, rz, x

_T = math.pi / 4


def gray(i: int) -> int:
    return i ^ (i >> 1)


# ---------- regras por tipo ----------

def _cry(g: Gate, out: Circuit) -> None:
    t, c = g.qubits
    out.append(ry(t, -g.param / 2))
    if g.polarity[0] == 0:
        out.append(x(t))
    out.append(cnot(c, t))
    out.append(ry(t, g.param / 2))


def _mcry(g: Gate, out: Circuit) -> None:
    t = g.qubits[0]
    controls = g.qubits[1:]
    k = len(controls)
    pattern = sum(p << j for j, p in enumerate(g.polarity))
    base = g.param / (1 << k)
    for i in range(1 << k):
        sign = -1.0 if bin(pattern & gray(i)).count("1") % 2 else 1.0
        out.append(ry(t, sign * base))
        flip = gray(i) ^ gray((i + 1) % (1 << k))
        out.append(cnot(controls[flip.bit_length() - 1], t))


def _aphi(g: Gate, out: Circuit) -> None:
    a, b = g.qubits
    out.append(cnot(b, a))
    out.append(ry(b, -g.param / 2))
    out.append(cnot(a, b))
    out.append(ry(b, g.param / 2))
    out.append(cnot(b, a))


def _caphi(g: Gate, out: Circuit) -> None:
    a, b = g.qubits[:2]
    controls = g.qubits[2:]
    out.append(cnot(b, a))
    decompose_into(mcry(b, (a, *controls), g.param, (1, *g.polarity)), out)
    out.append(cnot(b, a))


def _toffoli(g: Gate, out: Circuit) -> None:
    c1, c2, t = g.qubits
    seq = [
        h(t), cnot(c2, t), rz(t, -_T), cnot(c1, t), rz(t, _T), cnot(c2, t), rz(t, -_T),
        cnot(c1, t), rz(c2, _T), rz(t, _T), h(t), cnot(c1, c2), rz(c1, _T), rz(c2, -_T), cnot(c1, c2),
    ]
    out.extend(seq)
    # quatro T e três T† : fase líquida e^{iπ/8}
    out.global_phase += math.pi / 8


def _pauli_exp(g: Gate, out: Circuit) -> None:
    qubits, letters = g.qubits, g.pauli
    order = sorted(range(len(qubits)), key=lambda j: qubits[j])
    qs = [qubits[j] for j in order]
    ls = [letters[j] for j in order]
    for q, p in zip(qs, ls):
        if p == "X":
            out.append(h(q))
        elif p == "Y":
            out.append(rx(q, math.pi / 2, fixed=True))
    for a, b in zip(qs, qs[1:]):
        out.append(cnot(a, b))
    out.append(rz(qs[-1], 2.0 * g.param))
    for a, b in reversed(list(zip(qs, qs[1:]))):
        out.append(cnot(a, b))
    for q, p in zip(qs, ls):
        if p == "X":
            out.append(h(q))
        elif p == "Y":
            out.append(rx(q, -math.pi / 2, fixed=True))


_RULES = {
    GateKind.CRY: _cry,
    GateKind.MCRY: _mcry,
    GateKind.APHI: _aphi,
    GateKind.CAPHI: _caphi,
    GateKind.TOFFOLI: _toffoli,
    GateKind.PAULI_EXP: _pauli_exp,
}


def decompose_into(gate: Gate, out: Circuit) -> None:
    if gate.is_primitive:
        out.append(gate)
        return
    rule = _RULES.get(gate.kind)
    if rule is None:
        raise ContractError(f"Sem decomposição para {gate.kind}")
    rule(gate, out)


def decompose(gate: Gate, n_qubits: int = 0) -> Circuit:
    """Circuito primitivo equivalente a ``gate``."""
    out = Circuit(max(n_qubits, max(gate.qubits) + 1))
    decompose_into(gate, out)
    return out


# ---------- custos ----------

def depth_bound(gate: Gate) -> int:
    """Teto de profundidade para cada tipo de porta."""
    k = len(gate.controls)
    if gate.is_primitive:
        return 1
    if gate.kind == GateKind.CRY:
        return 3
    if gate.kind == GateKind.MCRY:
        return 2 ** (k + 1)
    if gate.kind == GateKind.APHI:
        return 5
    if gate.kind == GateKind.CAPHI:
        return 2 ** (k + 2) + 2
    if gate.kind == GateKind.TOFFOLI:
        return 12
    w = len(gate.qubits)
    return 2 * (w - 1) + 3


@lru_cache(maxsize=4096)
def _cost(kind: GateKind, arity: int, polarity: Tuple[int, ...], pauli: str) -> int:
    param = None if kind in (GateKind.H, GateKind.X, GateKind.CNOT, GateKind.TOFFOLI) else 0.5
    sample = Gate(kind, tuple(range(arity)), param, polarity or None, pauli or None)
    return decompose(sample).depth()


def depth_cost(gate: Gate) -> int:
    """Profundidade da expansão da porta isolada (independe do ângulo)."""
    return _cost(gate.kind, len(gate.qubits), gate.polarity or (), gate.pauli or "")


def expand_all(gates: Sequence[Gate], n_qubits: int) -> Circuit:
    return Circuit(n_qubits, list(gates)).expand()
