# src/mixers/criteria.py
"""Verificação densa dos critérios de misturadores estritos."""
from __future__ import annotations
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Set, Tuple
import logging

import networkx as nx
import numpy as np

from src.core.config import Settings, get_settings
from src.core.encodings.codes import decode_word, is_valid_word
from src.core.errors import ContractError
from src.core.simulator.dense import check_dim, circuit_unitary
from .design import MixerDesign
from .graphs import Edge, PartialMixerGraph, component_count, pmg_of

logger = logging.getLogger(__name__)


class CriteriaKind(str, Enum):
    SINGLE_VAR = "single_var"
    PPM = "ppm"
    FULL_MIXER = "full_mixer"


@dataclass
class CriteriaReport:
    kind: CriteriaKind
    passed: bool
    violations: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "passed": self.passed,
            "violations": list(self.violations),
            "details": dict(self.details),
        }


def design_pmg(design: MixerDesign, settings: Optional[Settings] = None) -> PartialMixerGraph:
    """União dos PMGs de cada membro, avaliados densamente."""
    settings = settings or get_settings()
    check_dim(1 << design.n_qubits, settings)
    graph = PartialMixerGraph(1 << design.n_qubits, frozenset())
    for member in design.member_circuits():
        graph = graph | pmg_of(member, settings=settings)
    return graph


def _split(state: int, design: MixerDesign) -> Optional[Tuple[int, ...]]:
    width = design.register_width
    mask = (1 << width) - 1
    values = []
    for i in range(len(design.variables)):
        word = (state >> (i * width)) & mask
        if not is_valid_word(word, design.d, design.code):
            return None
        values.append(decode_word(word, design.d, design.code))
    return tuple(values)


def _check_single_var(design: MixerDesign, graph: PartialMixerGraph, report: CriteriaReport) -> None:
    good = design.valid_states()
    crossing = sorted(graph.crossing(good))
    if crossing:
        report.violations.append(f"{len(crossing)} arestas entre estados válidos e inválidos, ex. {crossing[0]}")
    n_comp = component_count(good, graph.induced(good))
    report.details["components"] = n_comp
    report.details["crossing_edges"] = len(crossing)
    if n_comp != 1:
        report.violations.append(f"grafo em S_G tem {n_comp} componentes")


def _check_ppm(design: MixerDesign, graph: PartialMixerGraph, report: CriteriaReport) -> None:
    if len(design.variables) != 2:
        report.violations.append("critério ppm exige duas variáveis")
        return
    good = design.valid_states()
    crossing = sorted(graph.crossing(good))
    if crossing:
        report.violations.append(f"{len(crossing)} arestas entre estados válidos e inválidos, ex. {crossing[0]}")
    pairs = nx.Graph()
    pairs.add_nodes_from(range(design.d))
    bad_swaps: List[Edge] = []
    for u, v in sorted(graph.induced(good)):
        xu, xv = _split(u, design), _split(v, design)
        if xu is None or xv is None or xu != xv[::-1]:
            bad_swaps.append((u, v))
            continue
        pairs.add_edge(*xu)
    if bad_swaps:
        report.violations.append(f"{len(bad_swaps)} arestas que não são trocas |k,l⟩↔|l,k⟩, ex. {bad_swaps[0]}")
    n_comp = nx.number_connected_components(pairs)
    report.details["pair_graph_components"] = n_comp
    report.details["crossing_edges"] = len(crossing)
    if n_comp != 1:
        isolated = sorted(n for n in pairs.nodes if pairs.degree(n) == 0)
        report.violations.append(f"grafo de pares desconexo ({n_comp} componentes, isolados {isolated})")


def _check_reachability(design: MixerDesign, settings: Settings, report: CriteriaReport) -> None:
    if len(design.variables) != 1:
        report.violations.append("alcançabilidade verificada apenas para misturadores de uma variável")
        return
    good = np.array(design.valid_states(), dtype=np.int64)
    full = circuit_unitary(design.circuit(expand=False), settings)
    u = full[np.ix_(good, good)]
    reached = np.zeros((len(good), len(good)), dtype=bool)
    power = np.eye(full.shape[0], dtype=complex)
    r_needed = 0
    for r in range(1, design.d + 1):
        power = full @ power
        reached |= np.abs(power[np.ix_(good, good)]) > settings.struct_tol
        if reached.all():
            r_needed = r
            break
    report.details["reachability_power"] = r_needed or None
    report.details["leakage_free"] = bool(np.allclose(np.abs(u) ** 2 @ np.ones(len(good)), 1.0, atol=1e-9))
    if not reached.all():
        missing = int((~reached).sum())
        report.violations.append(f"{missing} pares de estados válidos sem amplitude em até {design.d} passos")


def verify_criteria(design: MixerDesign, kind: str, settings: Optional[Settings] = None) -> CriteriaReport:
    """Relatório de critérios; nunca levanta por violação, apenas a registra."""
    settings = settings or get_settings()
    try:
        kind = CriteriaKind(kind)
    except ValueError:
        raise ContractError(f"Critério desconhecido: {kind}") from None
    report = CriteriaReport(kind, passed=False)
    if kind == CriteriaKind.FULL_MIXER:
        _check_reachability(design, settings, report)
    else:
        graph = design_pmg(design, settings)
        report.details["edges"] = len(graph)
        if kind == CriteriaKind.SINGLE_VAR:
            _check_single_var(design, graph, report)
        else:
            _check_ppm(design, graph, report)
    report.passed = not report.violations
    logger.debug("verify_criteria(%s): %s", kind.value, "ok" if report.passed else report.violations)
    return report
