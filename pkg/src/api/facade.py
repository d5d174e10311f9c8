# src/api/facade.py
from __future__ import annotations
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union
import json
import logging

import numpy as np

from src.core.circuits.circuit import Circuit
from src.core.circuits.product_formula import emit_product_formula
from src.core.config import Settings, get_settings
from src.core.dqir.domain import DomainSpec
from src.core.dqir.operator import OperatorPoly
from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.lowering import lower_operator
from src.core.encodings.pauli import PauliPoly
from src.core.errors import ContractError
from src.core.simulator.dense import exp_check, pauli_matrix, restricted_equiv
from src.core.types.code import CodeSpec
from src.mixers.criteria import verify_criteria
from src.mixers.design import MixerDesign
from src.mixers.gdpm import gdpm_search
from src.mixers.leakage import max_leakage
from src.mixers.ppm import ppm_construct
from src.penalties.spec import PenaltySpec, effective_cost
from src.problems.costs import problem_cost
from src.problems.feasibility import FeasibilityProjector, feasibility_projector
from src.problems.instances import ProblemInstance, load_instance

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
OUTPUTS = ("dqir", "pauli", "circuit", "report", "mixer", "verify")
DEFAULT_BETA = 0.5


def _load_json(source: Union[str, Path, Mapping[str, Any]]) -> Dict[str, Any]:
    if isinstance(source, Mapping):
        return dict(source)
    path = Path(source)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ContractError(f"Arquivo de job não encontrado: {path}") from None
    except json.JSONDecodeError as exc:
        raise ContractError(f"JSON inválido em {path}: {exc}") from exc


def design_mixer(kind: str, d: int, code: Union[str, CodeSpec], settings: Optional[Settings] = None) -> MixerDesign:
    """gdpm (uma variável) ou ppm (duas variáveis)."""
    code = code if isinstance(code, CodeSpec) else CodeSpec.parse(code)
    if kind == "gdpm":
        return gdpm_search(d, code, settings=settings)
    if kind == "ppm":
        return ppm_construct(d, code)
    raise ContractError(f"Misturador desconhecido: {kind} (use gdpm ou ppm)")


@dataclass
class Check:
    name: str
    value: float
    limit: float
    passed: bool
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value, "limit": self.limit, "passed": self.passed, "note": self.note}


@dataclass
class Pipeline:
    """Job completo: problema → penalidades → códigos → rebaixamento → circuito."""

    job: Dict[str, Any]
    settings: Settings = field(default_factory=get_settings)

    @staticmethod
    def from_job(source: Union[str, Path, Mapping[str, Any]], settings: Optional[Settings] = None) -> "Pipeline":
        job = _load_json(source)
        version = job.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ContractError(f"schema_version {version} não suportado (esperado {SCHEMA_VERSION})")
        if "problem" not in job:
            raise ContractError("Job sem bloco 'problem'")
        outputs = job.get("outputs", [])
        unknown = [o for o in outputs if o not in OUTPUTS]
        if unknown:
            raise ContractError(f"Saídas desconhecidas: {unknown}")
        return Pipeline(job, settings or get_settings())

    # ---------- problema ----------
    @cached_property
    def instance(self) -> ProblemInstance:
        return load_instance(self.job["problem"])

    @property
    def domain(self) -> DomainSpec:
        return self.instance.domain()

    @cached_property
    def _cost(self) -> Tuple[OperatorPoly, Dict[str, Any]]:
        return problem_cost(self.instance, minimize=True)

    @property
    def cost(self) -> OperatorPoly:
        return self._cost[0]

    @property
    def meta(self) -> Dict[str, Any]:
        return self._cost[1]

    @cached_property
    def penalty_specs(self) -> List[PenaltySpec]:
        return [PenaltySpec.from_dict(p) for p in self.job.get("penalties", [])]

    @cached_property
    def assignment(self) -> EncodingAssignment:
        return EncodingAssignment.from_json(self.domain, self.job.get("encoding", "sb"))

    @property
    def beta(self) -> float:
        return float(self.job.get("beta", DEFAULT_BETA))

    def penalties(self) -> List[Tuple[PenaltySpec, Union[OperatorPoly, PauliPoly]]]:
        return [(spec, spec.build(self.domain, self.assignment)) for spec in self.penalty_specs]

    def effective(self) -> Union[OperatorPoly, PauliPoly]:
        return effective_cost(self.cost, self.penalties(), self.assignment)

    def dqir(self) -> OperatorPoly:
        """H_C mais penalidades de domínio (as de validade só existem em qubits)."""
        domain_only = [(s, op) for s, op in self.penalties() if not s.is_encoded]
        return effective_cost(self.cost, domain_only)

    def lowered(self) -> PauliPoly:
        eff = self.effective()
        poly = lower_operator(eff, self.assignment) if isinstance(eff, OperatorPoly) else eff
        logger.info("lower: %d strings em %d qubits", len(poly), poly.n_qubits)
        return poly.simplify(self.settings.prune_tol)

    def circuit(self, beta: Optional[float] = None) -> Circuit:
        return emit_product_formula(self.lowered(), self.beta if beta is None else beta, settings=self.settings)

    def feasibility(self) -> FeasibilityProjector:
        block = self.job.get("feasibility") or {}
        kind = block.get("kind", self.instance.feasibility_kind())
        if kind == "sum_equals" and "target" not in block:
            block = {**block, "target": self.meta.get("target", 0)}
        return feasibility_projector(
            kind,
            self.domain,
            variables=block.get("variables"),
            target=float(block.get("target", 0.0)),
            coeffs=block.get("coeffs"),
            settings=self.settings,
        )

    def mixer(self) -> Optional[MixerDesign]:
        block = self.job.get("mixer")
        if not block:
            return None
        return design_mixer(block.get("kind", "gdpm"), int(block["d"]), block.get("code", "gray"), self.settings)

    # ---------- verificação ----------
    def verify(self) -> List[Check]:
        """Oráculos densos: equivalência restrita, exponencial exata, penalidades e misturador."""
        s = self.settings
        checks: List[Check] = []
        poly_cost = lower_operator(self.cost, self.assignment)
        checks.append(self._check("restricted_equiv(cost)", restricted_equiv(self.cost, poly_cost, self.assignment, s), s.equiv_tol))
        if any(not spec.is_encoded for spec in self.penalty_specs):
            dqir = self.dqir()
            poly = lower_operator(dqir, self.assignment)
            checks.append(self._check("restricted_equiv(dqir)", restricted_equiv(dqir, poly, self.assignment, s), s.equiv_tol))
        lowered = self.lowered()
        if lowered.is_diagonal() and lowered.n_qubits <= s.dense_cap_qubits:
            circuit = emit_product_formula(lowered, self.beta, settings=s)
            checks.append(self._check("exp_check", exp_check(pauli_matrix(lowered, s), circuit, self.beta), s.equiv_tol))
        checks.extend(self._penalty_checks())
        design = self.mixer()
        if design is not None:
            kind = "ppm" if len(design.variables) == 2 else "single_var"
            report = verify_criteria(design, kind, s)
            checks.append(Check(f"criteria({kind})", float(len(report.violations)), 0.0, report.passed, "; ".join(report.violations)))
            checks.append(self._check("max_leakage", max_leakage(design, settings=s), s.struct_tol))
        logger.info("verify: %d checagens, %d falhas", len(checks), sum(not c.passed for c in checks))
        return checks

    def _penalty_checks(self) -> List[Check]:
        """Penalidades se anulam onde devem e nunca são negativas."""
        s = self.settings
        out: List[Check] = []
        feasible = self.feasibility()
        vanishing = _VANISHES_ON.get(feasible.kind)
        mask = feasible.mask().astype(bool)
        for spec, op in self.penalties():
            name = spec.kind.value
            if spec.is_encoded:
                diag = np.real(np.diagonal(pauli_matrix(op, s)))
                on = diag[self.assignment.valid_states()]
                out.append(self._check(f"penalty({name}) on valid", float(np.max(np.abs(on), initial=0.0)), s.bool_tol))
            else:
                diag = np.real(op.diagonal())
                if name == vanishing:
                    out.append(self._check(f"penalty({name}) on feasible", float(np.max(np.abs(diag[mask]), initial=0.0)), s.bool_tol))
            out.append(self._check(f"penalty({name}) >= 0", float(max(0.0, -diag.min(initial=0.0))), s.bool_tol))
        return out

    @staticmethod
    def _check(name: str, value: float, limit: float) -> Check:
        return Check(name, float(value), float(limit), bool(value <= limit))


# penalidade que se anula no conjunto viável de cada projetor
_VANISHES_ON = {"permutation": "perm", "sum_equals": "sum"}
