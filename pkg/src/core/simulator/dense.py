# src/core/simulator/dense.py
"""Oráculo denso: matrizes completas para OperatorPoly, PauliPoly e Circuit.

Ordem de kron: o qubit 0 é o bit menos significativo do índice da base,
consistente com o layout de ``EncodingAssignment``. Desvios são reportados
na norma do máximo elemento em módulo.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Sequence, Union
import logging
import math

import numpy as np
from scipy import linalg

from src.core.circuits.circuit import Circuit
from src.core.circuits.gates import Gate, GateKind
from src.core.config import Settings, get_settings
from src.core.dqir.operator import OperatorPoly
from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.lowering import restricted_matrix
from src.core.encodings.pauli import PauliPoly, _parity
from src.core.errors import ContractError, DimensionCapError

logger = logging.getLogger(__name__)

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_PAULI = {"I": _I2, "X": _X, "Y": _Y, "Z": _Z}


def check_dim(dim: int, settings: Optional[Settings] = None) -> None:
    settings = settings or get_settings()
    if dim > settings.dense_cap_dim:
        raise DimensionCapError(dim, settings.dense_cap_dim)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ContractError(f"Matriz densa deve ser quadrada, recebido {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) <= tol)

    def is_unitary(self, tol: float = 1e-9) -> bool:
        eye = np.eye(self.dim, dtype=complex)
        return bool(np.max(np.abs(self.matrix.conj().T @ self.matrix - eye), initial=0.0) <= tol)

    def is_diagonal(self, tol: float = 0.0) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.max(np.abs(off), initial=0.0) <= tol)

    def max_abs_diff(self, other: "DenseOperator") -> float:
        if other.dim != self.dim:
            raise ContractError(f"Dimensões incompatíveis: {self.dim} vs {other.dim}")
        return float(np.max(np.abs(self.matrix - other.matrix), initial=0.0))


# ---------- matrizes locais ----------

def _rot(axis: np.ndarray, theta: float) -> np.ndarray:
    return math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * axis


def _ry(theta: float) -> np.ndarray:
    return _rot(_Y, theta).real.astype(complex)


def _controlled(n: int, target_bit: int, control_bits: Sequence[int], polarity: Sequence[int], block: np.ndarray) -> np.ndarray:
    """Aplica ``block`` no bit alvo quando todos os controles batem com a polaridade."""
    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    for idx in range(dim):
        if (idx >> target_bit) & 1:
            continue
        if any(((idx >> c) & 1) != p for c, p in zip(control_bits, polarity)):
            continue
        j = idx | (1 << target_bit)
        u[idx, idx], u[idx, j] = block[0, 0], block[0, 1]
        u[j, idx], u[j, j] = block[1, 0], block[1, 1]
    return u


def gate_matrix(gate: Gate) -> np.ndarray:
    """Unitária pretendida da porta no índice local Σ_j b_{qubits[j]}·2^j."""
    k, t = gate.kind, gate.param
    if k == GateKind.RX:
        return _rot(_X, t)
    if k == GateKind.RY:
        return _ry(t)
    if k == GateKind.RZ:
        return _rot(_Z, t)
    if k == GateKind.H:
        return _H.copy()
    if k == GateKind.X:
        return _X.copy()
    n = len(gate.qubits)
    if k == GateKind.CNOT:
        return _controlled(2, 1, (0,), (1,), _X)
    if k == GateKind.TOFFOLI:
        return _controlled(3, 2, (0, 1), (1, 1), _X)
    if k == GateKind.CRY:
        return _controlled(2, 0, (1,), gate.polarity, _ry(t) @ _X)
    if k == GateKind.MCRY:
        return _controlled(n, 0, tuple(range(1, n)), gate.polarity, _ry(t))
    c, s = math.cos(t / 2), math.sin(t / 2)
    if k in (GateKind.APHI, GateKind.CAPHI):
        block = np.array([[-s, c], [c, s]]) if k == GateKind.APHI else np.array([[c, -s], [s, c]])
        u = np.eye(1 << n, dtype=complex)
        pol = gate.polarity or ()
        for idx in range(1 << n):
            if idx & 3 != 1:
                continue
            if any(((idx >> (2 + j)) & 1) != p for j, p in enumerate(pol)):
                continue
            a, b = idx, idx ^ 3
            u[a, a], u[a, b] = block[0, 0], block[0, 1]
            u[b, a], u[b, b] = block[1, 0], block[1, 1]
        return u
    if k == GateKind.PAULI_EXP:
        p = reduce(np.kron, [_PAULI[ch] for ch in reversed(gate.pauli)], np.eye(1, dtype=complex))
        return linalg.expm(-1j * t * p)
    raise ContractError(f"Sem matriz para {k}")


# ---------- aplicação ----------

def apply_local(state: np.ndarray, local: np.ndarray, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
    """Aplica ``local`` (2^k × 2^k) aos qubits dados de ``state`` (2^n × m)."""
    k = len(qubits)
    m = state.shape[1]
    tensor = state.reshape([2] * n_qubits + [m])
    op = local.reshape([2] * (2 * k))
    in_axes = [k + (k - 1 - j) for j in range(k)]
    state_axes = [n_qubits - 1 - q for q in qubits]
    out = np.tensordot(op, tensor, axes=(in_axes, state_axes))
    out = np.moveaxis(out, [k - 1 - j for j in range(k)], state_axes)
    return out.reshape(1 << n_qubits, m)


def apply_gate(state: np.ndarray, gate: Gate, n_qubits: int) -> np.ndarray:
    return apply_local(state, gate_matrix(gate), gate.qubits, n_qubits)


def circuit_unitary(circuit: Circuit, settings: Optional[Settings] = None) -> np.ndarray:
    """Unitária do circuito (macros usam sua unitária pretendida)."""
    check_dim(1 << circuit.n_qubits, settings)
    u = np.eye(1 << circuit.n_qubits, dtype=complex)
    for g in circuit.gates:
        u = apply_gate(u, g, circuit.n_qubits)
    if circuit.global_phase:
        u = u * np.exp(1j * circuit.global_phase)
    return u


def apply_circuit(circuit: Circuit, states: np.ndarray) -> np.ndarray:
    out = np.asarray(states, dtype=complex)
    vector = out.ndim == 1
    if vector:
        out = out[:, None]
    for g in circuit.gates:
        out = apply_gate(out, g, circuit.n_qubits)
    out = out * np.exp(1j * circuit.global_phase)
    return out[:, 0] if vector else out


def pauli_matrix(poly: PauliPoly, settings: Optional[Settings] = None) -> np.ndarray:
    dim = 1 << poly.n_qubits
    check_dim(dim, settings)
    cols = np.arange(dim, dtype=np.int64)
    out = np.zeros((dim, dim), dtype=complex)
    for (x, z), c in poly.terms.items():
        n_y = bin(x & z).count("1")
        signs = 1.0 - 2.0 * _parity(cols, z)
        out[cols ^ x, cols] += c * (1j ** n_y) * signs
    return out


def to_dense(obj: Union[OperatorPoly, PauliPoly, Circuit, Gate], settings: Optional[Settings] = None) -> DenseOperator:
    if isinstance(obj, OperatorPoly):
        check_dim(obj.domain.n_states, settings)
        return DenseOperator(obj.to_matrix())
    if isinstance(obj, PauliPoly):
        return DenseOperator(pauli_matrix(obj, settings))
    if isinstance(obj, Circuit):
        return DenseOperator(circuit_unitary(obj, settings))
    if isinstance(obj, Gate):
        return DenseOperator(gate_matrix(obj))
    raise ContractError(f"Sem representação densa para {type(obj).__name__}")


# ---------- verificações ----------

def restricted_equiv(
    op: OperatorPoly, poly: PauliPoly, assignment: EncodingAssignment, settings: Optional[Settings] = None
) -> float:
    """max_{x,y válidos} |⟨enc(x)|P|enc(y)⟩ − ⟨x|O|y⟩|."""
    check_dim(op.domain.n_states, settings)
    if poly.n_qubits != assignment.n_qubits:
        raise ContractError(f"PauliPoly com {poly.n_qubits} qubits, layout com {assignment.n_qubits}")
    restricted = restricted_matrix(poly, assignment)
    dev = float(np.max(np.abs(restricted - op.to_matrix()), initial=0.0))
    logger.debug("restricted_equiv: desvio %.3e em %d estados", dev, op.domain.n_states)
    return dev


def exp_check(h: Union[DenseOperator, np.ndarray], circuit: Circuit, beta: float) -> float:
    """‖U_C − exp(−iβH)‖_max."""
    hm = h.matrix if isinstance(h, DenseOperator) else np.asarray(h, dtype=complex)
    if hm.shape != (1 << circuit.n_qubits, 1 << circuit.n_qubits):
        raise ContractError(f"Dimensão de H {hm.shape} incompatível com circuito de {circuit.n_qubits} qubits")
    target = linalg.expm(-1j * beta * hm)
    return float(np.max(np.abs(circuit_unitary(circuit) - target), initial=0.0))


def projector_expectation(state: np.ndarray, mask: np.ndarray) -> float:
    """⟨ψ|P|ψ⟩ para P diagonal dado por uma máscara 0/1."""
    return float(np.sum(np.abs(state) ** 2 * mask))
