# src/mixers/gdpm.py
"""Busca de misturadores parciais derivados de grafos (GDPM).

Para cada porta da biblioteca o PMG é calculado uma vez. Grafos com arestas
entre estados válidos (S_G) e inválidos (S_B), sem arestas em S_G, ou que
tocam estados congelados são descartados. A busca une grafos da biblioteca
em feixe, mantendo apenas os candidatos com o menor número de componentes
em S_G, até restar uma única componente.
"""
from __future__ import annotations
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple
import logging

from src.core.circuits.gates import Gate, rx
from src.core.config import Settings, get_settings
from src.core.encodings.codes import codeword, codewords
from src.core.errors import ContractError, LibraryInsufficientError
from src.core.types.code import CodeKind, CodeSpec
from .design import MixerDesign
from .graphs import Edge, component_count
from .library import GateTemplate, aphi_library, bridge_template, default_library

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Candidate:
    members: Tuple[int, ...]
    edges: FrozenSet[Edge]
    components: int
    cost: int
    descriptor: Tuple[str, ...]

    def order_key(self):
        return (self.cost, self.descriptor)


def _admissible(
    library: Sequence[GateTemplate], good: FrozenSet[int], frozen: FrozenSet[int]
) -> List[Tuple[int, FrozenSet[Edge]]]:
    out = []
    for i, t in enumerate(library):
        inside = []
        ok = True
        for u, v in t.edges:
            gu, gv = u in good, v in good
            if gu != gv or u in frozen or v in frozen:
                ok = False
                break
            if gu:
                inside.append((u, v))
        if ok and inside:
            out.append((i, frozenset(inside)))
    return out


def _prune(cands: Iterable[_Candidate]) -> List[_Candidate]:
    """Dedup por conjunto de arestas mantendo o melhor pela ordem total."""
    best = {}
    for c in cands:
        cur = best.get(c.edges)
        if cur is None or c.order_key() < cur.order_key():
            best[c.edges] = c
    return sorted(best.values(), key=_Candidate.order_key)


def _trim_redundant(cand: _Candidate, graphs: dict, good: FrozenSet[int], library) -> Tuple[int, ...]:
    """Remove membros dispensáveis (os mais caros primeiro)."""
    members = list(cand.members)
    for i in sorted(members, key=lambda m: (-library[m].cost, library[m].descriptor)):
        rest = [m for m in members if m != i]
        if not rest:
            continue
        edges = set().union(*(graphs[m] for m in rest))
        if component_count(good, edges) == 1:
            members = rest
    return tuple(members)


def search_union(
    library: Sequence[GateTemplate],
    good: Iterable[int],
    frozen: Iterable[int] = (),
    settings: Optional[Settings] = None,
) -> List[GateTemplate]:
    """Laço principal: uniões de PMGs minimizando componentes em S_G."""
    settings = settings or get_settings()
    good = frozenset(good)
    frozen = frozenset(frozen)
    if len(good) <= 1:
        return []
    admissible = _admissible(library, good, frozen)
    if not admissible:
        raise LibraryInsufficientError(len(good), "nenhuma porta da biblioteca preserva a validade")
    graphs = dict(admissible)

    frontier = _prune(
        _Candidate((i,), e, component_count(good, e), library[i].cost, (library[i].descriptor,))
        for i, e in admissible
    )
    best = min(c.components for c in frontier)
    frontier = [c for c in frontier if c.components == best]
    round_ = 0
    while best > 1:
        round_ += 1
        if settings.gdpm_beam:
            frontier = frontier[: settings.gdpm_beam]
        grown = []
        for cand in frontier:
            for i, e in admissible:
                if i in cand.members or e <= cand.edges:
                    continue
                edges = cand.edges | e
                grown.append(
                    _Candidate(
                        cand.members + (i,),
                        edges,
                        component_count(good, edges),
                        cand.cost + library[i].cost,
                        tuple(sorted(cand.descriptor + (library[i].descriptor,))),
                    )
                )
        if not grown:
            raise LibraryInsufficientError(best)
        level = min(c.components for c in grown)
        logger.debug("gdpm: rodada %d, %d candidatos, melhor %d componentes", round_, len(grown), level)
        if level >= best:
            raise LibraryInsufficientError(best)
        best = level
        frontier = _prune(c for c in grown if c.components == best)
    chosen = _trim_redundant(frontier[0], graphs, good, library)
    return [library[i] for i in chosen]


def _certificate(templates: Sequence[GateTemplate], good: Iterable[int]) -> List[Edge]:
    good = set(good)
    edges = set()
    for t in templates:
        edges |= {e for e in t.edges if e[0] in good and e[1] in good}
    return sorted(edges)


# ---------- construções ----------

def simple_binary_mixer(n_qubits: int, d: Optional[int] = None, code: Optional[CodeSpec] = None) -> MixerDesign:
    """R_X em todos os qubits (estrito quando d = 2^n em código compacto)."""
    angle = get_settings().generic_angle
    d = d if d is not None else 1 << n_qubits
    code = code or CodeSpec.sb()
    gates = [rx(q, angle) for q in range(n_qubits)]
    return MixerDesign(gates, n_qubits, d, code, kind="sbm")


def _is_power_of_two(d: int) -> bool:
    return d >= 2 and d & (d - 1) == 0


def _local_code(code: CodeSpec) -> CodeSpec:
    return CodeSpec.gray() if code.local == CodeKind.GRAY else CodeSpec.sb()


def _block_unary(d: int, code: CodeSpec, settings: Settings) -> MixerDesign:
    nb = code.block_qubits
    n = code.n_qubits(d)
    local = _local_code(code)
    gates: List[Gate] = []
    templates: List[GateTemplate] = []
    blocks = code.n_blocks(d)
    good = codewords(d, code)
    for b in range(blocks):
        used = min(code.g, d - b * code.g)
        words = [codeword(v, 1 << nb, local) for v in range(used + 1)]
        # A_φ cobre a troca 01↔10, que nenhum R_Y controlado realiza
        lib = default_library(nb, local.kind, states=words) + aphi_library(nb, states=words)
        found = search_union(lib, words[1:], frozen=[words[0]], settings=settings)
        for t in found:
            shifted = t.shifted(b * nb, n, states=good)
            templates.append(shifted)
            gates.append(shifted.gate)
    for b in range(blocks - 1):
        used = min(code.g, d - b * code.g)
        left = _single_bit(codeword(used, 1 << nb, local))
        if left is None:
            left = _single_bit(codeword(1, 1 << nb, local))
        right = _single_bit(codeword(1, 1 << nb, local))
        a = b * nb + left
        c = (b + 1) * nb + right
        block_qubits = list(range(b * nb, (b + 2) * nb))
        controls = [q for q in block_qubits if q not in (a, c)]
        bridge = bridge_template(a, c, controls, n, states=good)
        templates.append(bridge)
        gates.append(bridge.gate)
    return MixerDesign(gates, n, d, code, kind="gdpm", certificate=_certificate(templates, good))


def _single_bit(word: int) -> Optional[int]:
    if word and word & (word - 1) == 0:
        return word.bit_length() - 1
    return None


def gdpm_search(
    d: int,
    code: CodeSpec,
    library: Optional[Sequence[GateTemplate]] = None,
    settings: Optional[Settings] = None,
) -> MixerDesign:
    """GDPM de uma variável com ``d`` valores no código ``code``."""
    settings = settings or get_settings()
    if d < 2:
        raise ContractError(f"gdpm_search exige d >= 2, recebido {d}")
    n = code.n_qubits(d)
    if library is None:
        if code.is_compact and _is_power_of_two(d):
            return simple_binary_mixer(n, d, code)
        if code.kind == CodeKind.BLOCK_UNARY:
            return _block_unary(d, code, settings)
    good = codewords(d, code)
    if library is None:
        library = default_library(n, code.kind, states=good)
    found = search_union(library, good, settings=settings)
    design = MixerDesign([t.gate for t in found], n, d, code, kind="gdpm", certificate=_certificate(found, good))
    logger.debug("gdpm_search(d=%d, %s): %d portas", d, code.label, len(found))
    return design
