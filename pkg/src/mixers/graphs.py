# src/mixers/graphs.py
from __future__ import annotations
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import numpy as np

from src.core.circuits.circuit import Circuit
from src.core.circuits.gates import Gate
from src.core.config import Settings, get_settings
from src.core.errors import ContractError
from src.core.simulator.dense import check_dim, circuit_unitary

Edge = Tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PartialMixerGraph:
    """Grafo sobre estados codificados; arestas em entradas fora da diagonal não nulas."""

    n_states: int
    edges: FrozenSet[Edge] = frozenset()

    def __post_init__(self):
        edges = frozenset(_edge(int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ContractError(f"Laço não permitido no PMG: {u}")
            if not 0 <= u < self.n_states or not 0 <= v < self.n_states:
                raise ContractError(f"Aresta ({u},{v}) fora de {self.n_states} estados")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_unitary(cls, u: np.ndarray, tol: float) -> "PartialMixerGraph":
        mags = np.abs(u)
        rows, cols = np.nonzero((mags > tol) | (mags.T > tol))
        return cls(u.shape[0], frozenset((int(a), int(b)) for a, b in zip(rows, cols) if a < b))

    def union(self, other: "PartialMixerGraph") -> "PartialMixerGraph":
        if other.n_states != self.n_states:
            raise ContractError("PMGs com números de estados diferentes")
        return PartialMixerGraph(self.n_states, self.edges | other.edges)

    __or__ = union

    def __len__(self) -> int:
        return len(self.edges)

    def crossing(self, good: Iterable[int]) -> Set[Edge]:
        """Arestas entre ``good`` e o complemento."""
        good = set(good)
        return {e for e in self.edges if (e[0] in good) != (e[1] in good)}

    def touching(self, states: Iterable[int]) -> Set[Edge]:
        states = set(states)
        return {e for e in self.edges if e[0] in states or e[1] in states}

    def induced(self, states: Iterable[int]) -> Set[Edge]:
        states = set(states)
        return {e for e in self.edges if e[0] in states and e[1] in states}

    def to_networkx(self, nodes: Optional[Iterable[int]] = None) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_states) if nodes is None else nodes)
        g.add_edges_from(self.edges if nodes is None else self.induced(g.nodes))
        return g

    def n_components(self, nodes: Iterable[int]) -> int:
        return component_count(nodes, self.edges)

    def is_connected_on(self, nodes: Iterable[int]) -> bool:
        return self.n_components(nodes) == 1


def component_count(nodes: Iterable[int], edges: Iterable[Edge]) -> int:
    g = nx.Graph()
    nodes = list(nodes)
    g.add_nodes_from(nodes)
    keep = set(nodes)
    g.add_edges_from(e for e in edges if e[0] in keep and e[1] in keep)
    return nx.number_connected_components(g)


def _unitary_at(obj: Union[Gate, Circuit], angle: float, n_qubits: Optional[int], settings: Settings) -> np.ndarray:
    if isinstance(obj, Gate):
        width = max(n_qubits or 0, max(obj.qubits) + 1)
        gate = obj.with_param(angle) if obj.param is not None else obj
        return circuit_unitary(Circuit(width, [gate]), settings)
    gates = [g.with_param(angle) if g.param is not None else g for g in obj.gates]
    return circuit_unitary(Circuit(obj.n_qubits, gates, obj.global_phase), settings)


def pmg_of(
    obj: Union[np.ndarray, Gate, Circuit],
    angle: Optional[float] = None,
    n_qubits: Optional[int] = None,
    settings: Optional[Settings] = None,
    cross_check: bool = True,
) -> PartialMixerGraph:
    """PMG estrutural: união das arestas no ângulo genérico e nos ângulos de checagem."""
    settings = settings or get_settings()
    if isinstance(obj, np.ndarray):
        check_dim(obj.shape[0], settings)
        return PartialMixerGraph.from_unitary(obj, settings.struct_tol)
    angles = [settings.generic_angle if angle is None else angle]
    if cross_check and angle is None:
        angles += list(settings.cross_angles)
    graph: Optional[PartialMixerGraph] = None
    for a in angles:
        g = PartialMixerGraph.from_unitary(_unitary_at(obj, a, n_qubits, settings), settings.struct_tol)
        graph = g if graph is None else graph | g
    return graph

