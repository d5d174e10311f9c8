# src/penalties/spec.py
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union
import logging

from src.core.dqir.domain import DomainSpec
from src.core.dqir.operator import OperatorPoly
from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.lowering import lower_operator
from src.core.encodings.pauli import PauliPoly
from src.core.errors import ContractError
from .domain import f_lin, f_perm, f_sum
from .validity import f_ss_for

logger = logging.getLogger(__name__)

Penalty = Union[OperatorPoly, PauliPoly]


class PenaltyKind(str, Enum):
    PERM = "perm"
    SUM = "sum"
    LIN = "lin"
    VALIDITY = "validity"


@dataclass(frozen=True)
class PenaltySpec:
    """Penalidade χ·F com parâmetros por tipo.

    - perm: ``variables`` (opcional)
    - sum: ``coeffs`` por variável e ``target``
    - lin: ``row`` (variável → coeficiente) e ``bound``
    - validity: ``variable`` (código vem da atribuição), ``allow_unary``
    """

    kind: PenaltyKind
    weight: float
    variables: Tuple[str, ...] = ()
    coeffs: Tuple[Tuple[str, Tuple[float, ...]], ...] = ()
    target: float = 0.0
    row: Tuple[Tuple[str, float], ...] = ()
    bound: float = 0.0
    variable: Optional[str] = None
    allow_unary: bool = False

    def __post_init__(self):
        if not isinstance(self.kind, PenaltyKind):
            try:
                object.__setattr__(self, "kind", PenaltyKind(str(self.kind).lower()))
            except ValueError:
                raise ContractError(f"Tipo de penalidade desconhecido: {self.kind}") from None
        if not self.weight > 0:
            raise ContractError(f"Peso χ deve ser positivo, recebido {self.weight}")
        if self.kind == PenaltyKind.LIN and not self.row:
            raise ContractError("Penalidade lin exige uma linha não vazia")
        if self.kind == PenaltyKind.VALIDITY and not self.variable:
            raise ContractError("Penalidade de validade exige a variável")
        if self.kind == PenaltyKind.SUM and not self.coeffs:
            raise ContractError("Penalidade sum exige coeficientes")

    # ---------- JSON ----------
    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PenaltySpec":
        try:
            return cls(
                kind=data["kind"],
                weight=float(data["weight"]),
                variables=tuple(data.get("variables", ())),
                coeffs=tuple((str(v), tuple(float(c) for c in cs)) for v, cs in dict(data.get("coeffs", {})).items()),
                target=float(data.get("target", 0.0)),
                row=tuple((str(v), float(a)) for v, a in dict(data.get("row", {})).items()),
                bound=float(data.get("bound", 0.0)),
                variable=data.get("variable"),
                allow_unary=bool(data.get("allow_unary", False)),
            )
        except KeyError as exc:
            raise ContractError(f"Penalidade sem campo obrigatório: {exc}") from exc

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind.value, "weight": self.weight}
        if self.variables:
            out["variables"] = list(self.variables)
        if self.coeffs:
            out["coeffs"] = {v: list(cs) for v, cs in self.coeffs}
            out["target"] = self.target
        if self.row:
            out["row"] = dict(self.row)
            out["bound"] = self.bound
        if self.variable:
            out["variable"] = self.variable
        if self.allow_unary:
            out["allow_unary"] = True
        return out

    @property
    def is_encoded(self) -> bool:
        return self.kind == PenaltyKind.VALIDITY

    def build(self, domain: DomainSpec, assignment: Optional[EncodingAssignment] = None) -> Penalty:
        """Operador F (sem o peso)."""
        if self.kind == PenaltyKind.PERM:
            return f_perm(domain, self.variables or None)
        if self.kind == PenaltyKind.SUM:
            return f_sum(domain, dict(self.coeffs), self.target)
        if self.kind == PenaltyKind.LIN:
            return f_lin(domain, dict(self.row), self.bound)
        if assignment is None:
            raise ContractError("Penalidade de validade exige atribuição de códigos")
        return f_ss_for(self.variable, assignment, self.allow_unary)


def effective_cost(
    h_c: Penalty,
    penalties: Sequence[Tuple[PenaltySpec, Penalty]],
    assignment: Optional[EncodingAssignment] = None,
) -> Penalty:
    """H_eff = H_C + Σ_j χ_j F_j.

    Se todos os operandos são DQIR devolve OperatorPoly; se algum já está no
    espaço de qubits os demais são rebaixados com ``assignment``.
    """
    operands: List[Tuple[float, Penalty]] = [(1.0, h_c)] + [(spec.weight, op) for spec, op in penalties]
    if all(isinstance(op, OperatorPoly) for _, op in operands):
        domain = h_c.domain
        return OperatorPoly.sum_of(domain, (op.scale(w) for w, op in operands))
    if assignment is None:
        raise ContractError("Mistura de operadores DQIR e de qubits exige atribuição de códigos")
    total = PauliPoly.zero(assignment.n_qubits)
    for w, op in operands:
        poly = lower_operator(op, assignment) if isinstance(op, OperatorPoly) else op
        if poly.n_qubits != assignment.n_qubits:
            raise ContractError(f"Penalidade com {poly.n_qubits} qubits, layout com {assignment.n_qubits}")
        total = total + poly.scale(w)
    logger.debug("effective_cost: %d parcelas, %d strings", len(operands), len(total))
    return total
