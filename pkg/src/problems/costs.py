# src/problems/costs.py
from __future__ import annotations
from typing import Dict, Optional, Tuple
import logging

import numpy as np

from src.core.dqir.domain import DomainSpec
from src.core.dqir.functions import eq
from src.core.dqir.operator import OperatorPoly
from src.core.dqir.primitives import Indicator, Value
from src.core.errors import ContractError
from .instances import (
    Z_LEVELS,
    ColoringInstance,
    IlpInstance,
    PortfolioInstance,
    ProblemInstance,
    SmsInstance,
    TspInstance,
)

logger = logging.getLogger(__name__)


def _padded(values, d: int) -> Tuple[float, ...]:
    out = [float(v) for v in values][:d]
    return tuple(out + [0.0] * (d - len(out)))


def coloring_cost(instance: ColoringInstance) -> OperatorPoly:
    """H_C = Σ_{(α,β)∈E} EQ(x_α, x_β)."""
    domain = instance.domain()
    return OperatorPoly.sum_of(domain, (eq(domain, a, b) for a, b in instance.edges))


def tsp_cost(instance: TspInstance) -> OperatorPoly:
    """Σ_α Σ_{l<k} d(k,l)(𝒫⁽ᵏ⁾_α 𝒫⁽ˡ⁾_{α+1} + 𝒫⁽ˡ⁾_α 𝒫⁽ᵏ⁾_{α+1}), com α+1 módulo M."""
    domain = instance.domain()
    m = instance.m
    if m < 2:
        return OperatorPoly.zero(domain)
    ids = domain.ids
    parts = []
    for a in range(m):
        here, nxt = ids[a], ids[(a + 1) % m]
        for k in range(m):
            for l in range(k):
                dist = instance.distances[k, l]
                if dist == 0:
                    continue
                parts.append(OperatorPoly.product(domain, {here: Indicator(k), nxt: Indicator(l)}, dist))
                parts.append(OperatorPoly.product(domain, {here: Indicator(l), nxt: Indicator(k)}, dist))
    op = OperatorPoly.sum_of(domain, parts)
    logger.debug("tsp_cost: M=%d, %d termos", m, op.n_terms)
    return op


def sms_cost(instance: SmsInstance) -> OperatorPoly:
    """Σ_α Value(w)_α Σ_{β<α} Value(p)_β + Σ_α (Value(w·p)_α − Value(w·d)_α)."""
    domain = instance.domain()
    ids = domain.ids
    d = domain.d(ids[0])
    w = instance.effective_weights
    p_vals = Value(_padded(instance.processing, d))
    w_vals = Value(_padded(w, d))
    local = Value(_padded(w * instance.processing - w * instance.deadlines, d))
    parts = []
    for a, var in enumerate(ids):
        parts.append(OperatorPoly.primitive(domain, var, local))
        for b in range(a):
            parts.append(OperatorPoly.product(domain, {var: w_vals, ids[b]: p_vals}))
    return OperatorPoly.sum_of(domain, parts)


def portfolio_cost(instance: PortfolioInstance) -> Tuple[OperatorPoly, OperatorPoly]:
    """(C_RR + C_TC, Σ_α 𝒜^z_α) com 𝒜^z = Value(−1, 0, +1)."""
    domain = instance.domain()
    ids = domain.ids
    z = Value(Z_LEVELS)
    z_sq = Value(tuple(v * v for v in Z_LEVELS))
    lam = instance.lam
    parts = []
    for a, va in enumerate(ids):
        parts.append(OperatorPoly.primitive(domain, va, z).scale(-(1.0 - lam) * instance.returns[a]))
        parts.append(OperatorPoly.primitive(domain, va, z_sq).scale(lam * instance.risk[a, a]))
        for b, vb in enumerate(ids):
            if b != a and instance.risk[a, b] != 0:
                parts.append(OperatorPoly.product(domain, {va: z, vb: z}, lam * instance.risk[a, b]))
        if instance.trade_cost:
            parts.append(OperatorPoly.constant(domain, instance.trade_cost))
            parts.append(
                OperatorPoly.primitive(domain, va, Indicator(instance.previous[a] + 1)).scale(-instance.trade_cost)
            )
    cost = OperatorPoly.sum_of(domain, parts)
    constraint = OperatorPoly.sum_of(domain, (OperatorPoly.primitive(domain, v, z) for v in ids))
    return cost, constraint


def ilp_cost(instance: IlpInstance, minimize: bool = False) -> OperatorPoly:
    """Σ_α c_α 𝒩_α; com ``minimize`` devolve −c·x para solvers que minimizam."""
    domain = instance.domain()
    sign = -1.0 if minimize else 1.0
    parts = [
        OperatorPoly.primitive(domain, var, Value(tuple(float(k) for k in range(d)))).scale(sign * c)
        for (var, d), c in zip(domain.variables, instance.objective)
        if c != 0
    ]
    return OperatorPoly.sum_of(domain, parts)


def problem_cost(instance: ProblemInstance, minimize: bool = True) -> Tuple[OperatorPoly, Dict[str, object]]:
    """Despacho pelo tipo da instância; devolve (H_C, metadados)."""
    if isinstance(instance, ColoringInstance):
        return coloring_cost(instance), {}
    if isinstance(instance, TspInstance):
        return tsp_cost(instance), {}
    if isinstance(instance, SmsInstance):
        return sms_cost(instance), {"weighted": instance.weighted}
    if isinstance(instance, PortfolioInstance):
        cost, constraint = portfolio_cost(instance)
        return cost, {"constraint": constraint, "target": instance.target}
    if isinstance(instance, IlpInstance):
        return ilp_cost(instance, minimize=minimize), {"sense": "minimize -c.x" if minimize else "maximize c.x"}
    raise ContractError(f"Sem gerador de custo para {type(instance).__name__}")
