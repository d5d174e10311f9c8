# src/mixers/library.py
"""Biblioteca de portas parametrizadas para a busca de GDPMs."""
from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional, Sequence

from src.core.circuits.decompose import depth_cost
from src.core.circuits.gates import Gate, GateKind, aphi, caphi, controlled_ry
from src.core.config import get_settings
from src.core.errors import ContractError
from src.core.types.code import CodeKind
from .graphs import Edge, PartialMixerGraph, _edge


def _matches(state: int, qubits: Sequence[int], polarity: Sequence[int]) -> bool:
    return all(((state >> q) & 1) == p for q, p in zip(qubits, polarity))


def structural_edges(gate: Gate, n_qubits: int, states: Optional[Iterable[int]] = None) -> FrozenSet[Edge]:
    """Arestas do PMG de ``gate`` em ângulo genérico, sem matriz densa.

    Válido para R_Y (com ou sem controles), A_φ e A_φ controlado. Com
    ``states`` devolve apenas as arestas que tocam esses estados.
    """
    k = gate.kind
    scan = range(1 << n_qubits) if states is None else states
    edges = set()
    if k in (GateKind.RY, GateKind.RX, GateKind.CRY, GateKind.MCRY):
        t = gate.target
        ctrl, pol = gate.controls, gate.polarity or ()
        for s in scan:
            if _matches(s, ctrl, pol):
                edges.add(_edge(s, s ^ (1 << t)))
        return frozenset(edges)
    if k in (GateKind.APHI, GateKind.CAPHI):
        a, b = gate.qubits[:2]
        ctrl, pol = gate.qubits[2:], gate.polarity or ()
        for s in scan:
            if ((s >> a) & 1) != ((s >> b) & 1) and _matches(s, ctrl, pol):
                edges.add(_edge(s, s ^ (1 << a) ^ (1 << b)))
        return frozenset(edges)
    raise ContractError(f"Sem PMG estrutural para {k.value}")


@dataclass(frozen=True)
class GateTemplate:
    """Porta da biblioteca com PMG e custo de profundidade pré-calculados.

    ``edges`` pode estar restrito às arestas que tocam os estados de
    interesse da busca (válidos e congelados).
    """

    gate: Gate
    width: int
    edges: FrozenSet[Edge] = field(default=frozenset(), compare=False)
    cost: int = field(default=0, compare=False)

    @classmethod
    def of(cls, gate: Gate, width: int, states: Optional[Iterable[int]] = None) -> "GateTemplate":
        return cls(gate, width, structural_edges(gate, width, states), depth_cost(gate))

    @property
    def descriptor(self) -> str:
        return self.gate.descriptor()

    @cached_property
    def pmg(self) -> PartialMixerGraph:
        return PartialMixerGraph(1 << self.width, self.edges)

    def shifted(self, offset: int, width: int, states: Optional[Iterable[int]] = None) -> "GateTemplate":
        return GateTemplate.of(self.gate.shifted(offset), width, states)

    def to_dict(self):
        return {**self.gate.to_dict(), "cost": self.cost}


def controlled_ry_library(
    n_qubits: int,
    angle: Optional[float] = None,
    max_controls: Optional[int] = None,
    states: Optional[Sequence[int]] = None,
) -> List[GateTemplate]:
    """R_Y em cada alvo com subconjuntos de controles e toda polaridade.

    Sem ``max_controls`` são n·3^{n−1} portas.
    """
    angle = get_settings().generic_angle if angle is None else angle
    out = []
    for t in range(n_qubits):
        others = [q for q in range(n_qubits) if q != t]
        top = len(others) if max_controls is None else min(max_controls, len(others))
        for size in range(top + 1):
            for controls in combinations(others, size):
                for pol in product((0, 1), repeat=size):
                    out.append(GateTemplate.of(controlled_ry(t, controls, angle, pol), n_qubits, states))
    return out


def aphi_library(n_qubits: int, angle: Optional[float] = None, states: Optional[Sequence[int]] = None) -> List[GateTemplate]:
    angle = get_settings().generic_angle if angle is None else angle
    return [GateTemplate.of(aphi(a, b, angle), n_qubits, states) for a, b in combinations(range(n_qubits), 2)]


# controles máximos do R_Y para domain wall: os dois vizinhos da parede
DOMAIN_WALL_CONTROLS = 2


def default_library(
    n_qubits: int, kind: CodeKind = CodeKind.SB, states: Optional[Sequence[int]] = None
) -> List[GateTemplate]:
    """Biblioteca padrão por código.

    - sb/gray: R_Y multi-controlado completo
    - unary: A_φ entre todo par de qubits
    - domain wall: R_Y com até dois controles
    """
    if n_qubits < 1:
        raise ContractError("Biblioteca exige ao menos um qubit")
    if kind == CodeKind.UNARY:
        return aphi_library(n_qubits, states=states)
    if kind == CodeKind.DOMAIN_WALL:
        return controlled_ry_library(n_qubits, max_controls=DOMAIN_WALL_CONTROLS, states=states)
    return controlled_ry_library(n_qubits, states=states)


def bridge_template(
    a: int,
    b: int,
    controls: Sequence[int],
    width: int,
    angle: Optional[float] = None,
    states: Optional[Sequence[int]] = None,
) -> GateTemplate:
    """A_φ entre os qubits ``a`` e ``b`` controlado em zero nos demais."""
    angle = get_settings().generic_angle if angle is None else angle
    if controls:
        gate = caphi(a, b, controls, angle, (0,) * len(controls))
    else:
        gate = aphi(a, b, angle)
    return GateTemplate.of(gate, width, states)
