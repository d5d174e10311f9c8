# src/mixers/design.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import json

import numpy as np

from src.core.circuits.circuit import Circuit
from src.core.circuits.gates import Gate
from src.core.config import get_settings
from src.core.encodings.codes import codewords
from src.core.errors import ContractError
from src.core.types.code import CodeSpec
from .graphs import Edge

SCHEMA_VERSION = 1

Angles = Union[float, Sequence[float]]


@dataclass
class MixerDesign:
    """Misturador estrito: produto ordenado de portas parametrizadas.

    ``basis_change`` (opcional) é aplicado antes das portas e desfeito depois;
    os membros efetivos são então B†·G·B.
    """

    gates: List[Gate]
    n_qubits: int
    d: int
    code: CodeSpec
    variables: Tuple[str, ...] = ("x",)
    kind: str = "gdpm"
    basis_change: List[Gate] = field(default_factory=list)
    certificate: List[Edge] = field(default_factory=list)

    def __post_init__(self):
        for g in list(self.gates) + list(self.basis_change):
            if any(q >= self.n_qubits for q in g.qubits):
                raise ContractError(f"Porta {g.descriptor()} fora de {self.n_qubits} qubits")

    # ---------- estados ----------
    @property
    def register_width(self) -> int:
        return self.code.n_qubits(self.d)

    def valid_states(self) -> Tuple[int, ...]:
        """Palavras válidas do registrador completo (produto das variáveis)."""
        words = codewords(self.d, self.code)
        width = self.register_width
        states = [0]
        for i in range(len(self.variables)):
            states = [s | (w << (i * width)) for s in states for w in words]
        return tuple(sorted(states))

    # ---------- circuitos ----------
    def _angles(self, angles: Optional[Angles]) -> List[float]:
        if angles is None:
            return [get_settings().generic_angle] * len(self.gates)
        if np.isscalar(angles):
            return [float(angles)] * len(self.gates)
        angles = [float(a) for a in angles]
        if len(angles) != len(self.gates):
            raise ContractError(f"Esperado {len(self.gates)} ângulos, recebido {len(angles)}")
        return angles

    def _conjugated(self, gates: Sequence[Gate], expand: bool) -> Circuit:
        basis = Circuit(self.n_qubits, list(self.basis_change))
        if basis.gates:
            basis = basis.expand(peephole=False)
        circuit = Circuit(self.n_qubits, list(basis.gates) + list(gates))
        if basis.gates:
            circuit = circuit.compose(basis.inverse())
        return circuit.expand() if expand else circuit

    def circuit(self, angles: Optional[Angles] = None, expand: bool = True) -> Circuit:
        params = self._angles(angles)
        gates = [g.with_param(a) if g.param is not None else g for g, a in zip(self.gates, params)]
        return self._conjugated(gates, expand)

    def member_circuits(self, angles: Optional[Angles] = None) -> List[Circuit]:
        """Um circuito por membro (B†·G·B), sem expansão das macros."""
        params = self._angles(angles)
        return [
            self._conjugated([g.with_param(a) if g.param is not None else g], expand=False)
            for g, a in zip(self.gates, params)
        ]

    def depth(self) -> int:
        return self.circuit().depth()

    def entangling_count(self) -> int:
        return self.circuit().entangling_count()

    # ---------- serialização ----------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "d": self.d,
            "code": self.code.to_json(),
            "variables": list(self.variables),
            "n_qubits": self.n_qubits,
            "gates": [g.to_dict() for g in self.gates],
            "basis_change": [g.to_dict() for g in self.basis_change],
            "depth": self.depth(),
            "certificate": {"valid_states": list(self.valid_states()), "edges": [list(e) for e in self.certificate]},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MixerDesign":
        try:
            cert = data.get("certificate", {}) or {}
            return cls(
                gates=[Gate.from_dict(g) for g in data["gates"]],
                n_qubits=int(data["n_qubits"]),
                d=int(data["d"]),
                code=CodeSpec.from_json(data["code"]),
                variables=tuple(data.get("variables", ("x",))),
                kind=str(data.get("kind", "gdpm")),
                basis_change=[Gate.from_dict(g) for g in data.get("basis_change", [])],
                certificate=[tuple(e) for e in cert.get("edges", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ContractError):
                raise
            raise ContractError(f"JSON de MixerDesign inválido: {exc}") from exc

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)
