# src/penalties/__init__.py
from .domain import embed_operator, f_lin, f_perm, f_sum, penalty_exchange
from .spec import PenaltyKind, PenaltySpec, effective_cost
from .validity import f_ss, f_ss_for

__all__ = [
    # domínio
    "f_perm",
    "f_sum",
    "f_lin",
    "penalty_exchange",
    "embed_operator",
    # validade
    "f_ss",
    "f_ss_for",
    # composição
    "PenaltyKind",
    "PenaltySpec",
    "effective_cost",
]
