# src/api/report.py
"""Varredura de profundidades: operadores registrados × códigos × d.

Cada construtor recebe (d, code) e devolve o PauliPoly que foi exponenciado
e o circuito expandido. As linhas são ordenadas antes de escritas, então o
resultado não depende de ``workers``.
"""
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.core.circuits.circuit import Circuit
from src.core.circuits.product_formula import emit_product_formula
from src.core.circuits.report import DepthReport, depth_report, sort_reports
from src.core.config import Settings, get_settings
from src.core.dqir.domain import DomainSpec
from src.core.dqir.functions import eq, number_op
from src.core.dqir.operator import OperatorPoly
from src.core.encodings.assignment import EncodingAssignment
from src.core.encodings.lowering import lower_operator
from src.core.encodings.pauli import PauliPoly
from src.core.errors import ContractError
from src.core.types.code import CodeSpec
from src.mixers.gdpm import gdpm_search
from src.mixers.generators import shift_generator
from src.mixers.trotter import trotter_mixer
from src.penalties.domain import embed_operator, f_perm, f_sum, penalty_exchange
from src.penalties.validity import f_ss
from src.problems.costs import coloring_cost, portfolio_cost, sms_cost, tsp_cost
from src.problems.instances import ColoringInstance, PortfolioInstance, SmsInstance, TspInstance

logger = logging.getLogger(__name__)

# β arbitrário: a profundidade não depende dele
REPORT_BETA = 0.37
F_PERM_VARIABLES = 3
DEFAULT_CODES = ("sb", "gray", "unary", "bu:3:gray")


@dataclass(frozen=True)
class Built:
    poly: PauliPoly
    circuit: Circuit


Builder = Callable[[int, CodeSpec, bool, Optional[Settings]], Built]


def _next_power_of_two(d: int) -> int:
    return 1 << (d - 1).bit_length()


def _exponentiate(op: OperatorPoly, code: CodeSpec, exchange: bool = False) -> Built:
    """Rebaixa ``op`` com código uniforme; com ``exchange`` amplia d à próxima potência de 2."""
    if exchange and code.is_compact:
        domain = op.domain
        penalties = []
        for var, d in op.domain.variables:
            target = _next_power_of_two(d)
            if target != d:
                domain, pen = penalty_exchange(domain, var, target)
                penalties.append((var, pen))
        if penalties:
            op = embed_operator(op, domain)
            op = OperatorPoly.sum_of(domain, [op] + [embed_operator(p, domain) for _, p in penalties])
    assignment = EncodingAssignment.uniform(op.domain, code)
    poly = lower_operator(op, assignment)
    return Built(poly, emit_product_formula(poly, REPORT_BETA))


def _pair(d: int) -> DomainSpec:
    return DomainSpec.of(("a", d), ("b", d))


def _eq(d, code, exchange, settings=None):
    return _exponentiate(eq(_pair(d), "a", "b"), code, exchange)


def _number(d, code, exchange, settings=None):
    domain = DomainSpec.of(("x", d))
    return _exponentiate(number_op(domain, "x"), code, exchange)


def _number_sq(d, code, exchange, settings=None):
    domain = DomainSpec.of(("x", d))
    n = number_op(domain, "x")
    return _exponentiate(n * n, code, exchange)


def _f_perm(d, code, exchange, settings=None):
    domain = DomainSpec.uniform("p", F_PERM_VARIABLES, d)
    return _exponentiate(f_perm(domain), code, exchange)


def _f_sum(d, code, exchange, settings=None):
    domain = _pair(d)
    ramp = [float(k) for k in range(d)]
    return _exponentiate(f_sum(domain, {"a": ramp, "b": ramp}, d - 1), code, exchange)


def _f_ss(d, code, exchange, settings=None):
    poly = f_ss(d, code, allow_unary=True)
    return Built(poly, emit_product_formula(poly, REPORT_BETA))


def _coloring(d, code, exchange, settings=None):
    return _exponentiate(coloring_cost(ColoringInstance.complete(d, d)), code, exchange)


def synthetic_tsp(m: int) -> TspInstance:
    dist = np.array([[0.0 if i == j else 1.0 + (i + j) % 5 for j in range(m)] for i in range(m)])
    return TspInstance(dist)


def synthetic_sms(m: int) -> SmsInstance:
    return SmsInstance(
        processing=np.array([1.0 + i % 3 for i in range(m)]),
        deadlines=np.array([2.0 * (i + 1) for i in range(m)]),
        weights=np.array([1.0 + i % 2 for i in range(m)]),
    )


def synthetic_portfolio(m: int) -> PortfolioInstance:
    risk = 0.02 * np.ones((m, m)) + 0.08 * np.eye(m)
    return PortfolioInstance(risk=risk, returns=np.linspace(0.05, 0.15, m), previous=(0,) * m, trade_cost=0.01)


def _tsp(d, code, exchange, settings=None):
    return _exponentiate(tsp_cost(synthetic_tsp(d)), code, exchange)


def _sms(d, code, exchange, settings=None):
    return _exponentiate(sms_cost(synthetic_sms(d)), code, exchange)


def _portfolio(d, code, exchange, settings=None):
    # d é o número de ativos; cada z tem 3 níveis
    cost, _ = portfolio_cost(synthetic_portfolio(d))
    return _exponentiate(cost, code, exchange)


def _shift_trotter(d, code, exchange, settings=None):
    domain = DomainSpec.of(("x", d))
    generator = shift_generator(domain, "x")
    assignment = EncodingAssignment.uniform(domain, code)
    return Built(lower_operator(generator, assignment), trotter_mixer(generator, assignment, REPORT_BETA))


def _gdpm(d, code, exchange, settings=None):
    design = gdpm_search(d, code, settings=settings)
    return Built(PauliPoly.zero(design.n_qubits), design.circuit())


OPERATORS: Dict[str, Builder] = {
    "eq": _eq,
    "number": _number,
    "number_sq": _number_sq,
    "f_perm": _f_perm,
    "f_sum": _f_sum,
    "f_ss": _f_ss,
    "coloring": _coloring,
    "sms": _sms,
    "tsp": _tsp,
    "portfolio": _portfolio,
    "shift_trotter": _shift_trotter,
    "gdpm": _gdpm,
}


def build_case(
    operator: str, d: int, code: CodeSpec, exchange: bool = False, settings: Optional[Settings] = None
) -> DepthReport:
    builder = OPERATORS.get(operator)
    if builder is None:
        raise ContractError(f"Operador desconhecido no relatório: {operator}")
    built = builder(d, code, exchange, settings)
    logger.debug("report %s %s d=%d: %d strings", operator, code.label, d, len(built.poly))
    return depth_report(code.label, d, built.poly, built.circuit, operator)


def sweep(
    operator: str,
    codes: Iterable[CodeSpec],
    ds: Iterable[int],
    exchange: bool = False,
    workers: int = 1,
    settings: Optional[Settings] = None,
) -> List[DepthReport]:
    """Uma linha por (código, d), ordenadas deterministicamente."""
    settings = settings or get_settings()
    cells: List[Tuple[CodeSpec, int]] = [(c, d) for c in codes for d in ds]
    if operator not in OPERATORS:
        raise ContractError(f"Operador desconhecido no relatório: {operator}")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda cell: build_case(operator, cell[1], cell[0], exchange, settings), cells))
    else:
        rows = [build_case(operator, d, c, exchange, settings) for c, d in cells]
    logger.info("report %s: %d linhas", operator, len(rows))
    return sort_reports(rows)


def parse_codes(text: Optional[str]) -> List[CodeSpec]:
    names: Sequence[str] = DEFAULT_CODES if not text else [t for t in text.split(",") if t.strip()]
    return [CodeSpec.parse(t.strip()) for t in names]


def parse_range(text: str) -> List[int]:
    """'3-16' ou '3,5,7' → lista de inteiros."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if not out:
        raise ContractError(f"Faixa de d vazia: {text!r}")
    return out
