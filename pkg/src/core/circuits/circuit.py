# src/core/circuits/circuit.py
from __future__ import annotations
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional
import json
import logging
import math

from src.core.errors import ContractError
from .gates import Gate, GateKind

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@dataclass
class Circuit:
    """Lista ordenada de portas sobre ``n_qubits`` qubits.

    ``global_phase`` é a fase φ tal que a unitária pretendida é
    e^{iφ} · (produto das portas).
    """

    n_qubits: int
    gates: List[Gate] = field(default_factory=list)
    global_phase: float = 0.0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise ContractError("n_qubits deve ser >= 0")
        for g in self.gates:
            self._check(g)

    def _check(self, gate: Gate) -> None:
        if any(q >= self.n_qubits for q in gate.qubits):
            raise ContractError(f"Porta {gate.descriptor()} fora de {self.n_qubits} qubits")

    # ---------- construção ----------
    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def compose(self, other: "Circuit") -> "Circuit":
        """Concatena ``other`` depois deste circuito (retorna novo circuito)."""
        if other.n_qubits != self.n_qubits:
            raise ContractError(f"Circuitos com larguras diferentes: {self.n_qubits} vs {other.n_qubits}")
        return Circuit(self.n_qubits, self.gates + other.gates, self.global_phase + other.global_phase)

    def inverse(self) -> "Circuit":
        """Circuito adjunto (apenas portas primitivas)."""
        self.require_expanded()
        out = []
        for g in reversed(self.gates):
            if g.kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
                out.append(g.with_param(-g.param))
            else:
                out.append(g)
        return Circuit(self.n_qubits, out, -self.global_phase)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    # ---------- expansão ----------
    @property
    def is_expanded(self) -> bool:
        return all(g.is_primitive for g in self.gates)

    def require_expanded(self) -> None:
        for g in self.gates:
            if not g.is_primitive:
                raise ContractError(f"Circuito contém macro não expandida: {g.descriptor()}")

    def expand(self, peephole: bool = True) -> "Circuit":
        from .decompose import decompose_into

        out = Circuit(self.n_qubits, global_phase=self.global_phase)
        for g in self.gates:
            decompose_into(g, out)
        if peephole:
            out = cancel_inverses(out)
        return out

    # ---------- métricas ----------
    def depth(self) -> int:
        return depth(self)

    def entangling_count(self) -> int:
        self.require_expanded()
        return sum(1 for g in self.gates if g.kind == GateKind.CNOT)

    def counts(self) -> Dict[str, int]:
        return dict(sorted(Counter(g.kind.value for g in self.gates).items()))

    # ---------- serialização ----------
    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n_qubits": self.n_qubits,
            "global_phase": self.global_phase,
            "gates": [g.to_dict() for g in self.gates],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Circuit":
        try:
            return cls(
                int(data["n_qubits"]),
                [Gate.from_dict(g) for g in data.get("gates", [])],
                float(data.get("global_phase", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ContractError):
                raise
            raise ContractError(f"JSON de circuito inválido: {exc}") from exc

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


# ---------- profundidade ----------

def depth(circuit: Circuit) -> int:
    """Profundidade ASAP com conectividade total.

    Cada porta primitiva ocupa uma camada; portas de 1 qubit consecutivas no
    mesmo qubit fundem-se em uma única camada.
    """
    circuit.require_expanded()
    level = [0] * circuit.n_qubits
    fusable = [False] * circuit.n_qubits
    for g in circuit.gates:
        if g.is_one_qubit:
            (q,) = g.qubits
            if not fusable[q]:
                level[q] += 1
                fusable[q] = True
            continue
        t = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = t
            fusable[q] = False
    return max(level, default=0)


# ---------- peephole ----------

_HALF_PI = math.pi / 2


def _inverse_pair(a: Gate, b: Gate) -> bool:
    if a.qubits != b.qubits:
        return False
    if a.kind == b.kind and a.kind in (GateKind.H, GateKind.X, GateKind.CNOT):
        return True
    if a.kind == b.kind == GateKind.RX and a.fixed and b.fixed:
        return abs(a.param + b.param) == 0.0 and abs(abs(a.param) - _HALF_PI) < 1e-15
    return False


def cancel_inverses(circuit: Circuit) -> Circuit:
    """Remove pares adjacentes de portas mutuamente inversas."""
    kept: List[Optional[Gate]] = []
    stacks: Dict[int, List[int]] = {q: [] for q in range(circuit.n_qubits)}
    removed = 0
    for g in circuit.gates:
        tops = {stacks[q][-1] if stacks[q] else None for q in g.qubits}
        if len(tops) == 1:
            (idx,) = tops
            if idx is not None and _inverse_pair(kept[idx], g):
                kept[idx] = None
                for q in g.qubits:
                    stacks[q].pop()
                removed += 1
                continue
        kept.append(g)
        for q in g.qubits:
            stacks[q].append(len(kept) - 1)
    if removed:
        logger.debug("peephole: %d pares cancelados", removed)
    return Circuit(circuit.n_qubits, [g for g in kept if g is not None], circuit.global_phase)
