# src/core/dqir/serialize.py
from __future__ import annotations
from typing import Any, Dict
import json

import numpy as np

from src.core.errors import ContractError
from .domain import DomainSpec
from .operator import OperatorPoly, ProductTerm, _frozen
from .primitives import classify, factor_from_dict

SCHEMA_VERSION = 1


def operator_to_dict(op: OperatorPoly) -> Dict[str, Any]:
    terms = []
    for t in op.terms:
        terms.append({
            "coeff": [t.coeff.real, t.coeff.imag],
            "factors": {var: classify(m).to_dict() for var, m in t.factors},
        })
    return {"schema_version": SCHEMA_VERSION, "domain": op.domain.to_json(), "terms": terms}


def operator_from_dict(data: Dict[str, Any]) -> OperatorPoly:
    """Reconstrói o operador sem simplificar (round-trip bit a bit)."""
    try:
        domain = DomainSpec.from_json(data["domain"])
        terms = []
        for item in data["terms"]:
            re, im = item["coeff"]
            factors = []
            raw = item.get("factors", {})
            for var in domain.ids:
                if var in raw:
                    f = factor_from_dict(raw[var])
                    factors.append((var, _frozen(f.matrix(domain.d(var)))))
            unknown = set(raw) - set(domain.ids)
            if unknown:
                raise ContractError(f"Fatores em variáveis desconhecidas: {sorted(unknown)}")
            terms.append(ProductTerm(complex(float(re), float(im)), tuple(factors)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ContractError):
            raise
        raise ContractError(f"JSON de OperatorPoly inválido: {exc}") from exc
    return OperatorPoly(domain, tuple(terms))


def dumps(op: OperatorPoly, **kwargs) -> str:
    # repr de float do Python é a menor decimal que reproduz o double
    return json.dumps(operator_to_dict(op), **kwargs)


def loads(text: str) -> OperatorPoly:
    return operator_from_dict(json.loads(text))
