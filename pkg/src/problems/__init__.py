# src/problems/__init__.py
from .costs import coloring_cost, ilp_cost, portfolio_cost, problem_cost, sms_cost, tsp_cost
from .feasibility import FEASIBILITY_KINDS, FeasibilityProjector, feasibility_projector
from .instances import (
    ColoringInstance,
    IlpInstance,
    PortfolioInstance,
    ProblemInstance,
    SmsInstance,
    TspInstance,
    Z_LEVELS,
    load_instance,
)

__all__ = [
    # instâncias
    "ProblemInstance",
    "ColoringInstance",
    "TspInstance",
    "SmsInstance",
    "PortfolioInstance",
    "IlpInstance",
    "Z_LEVELS",
    "load_instance",
    # custos
    "coloring_cost",
    "tsp_cost",
    "sms_cost",
    "portfolio_cost",
    "ilp_cost",
    "problem_cost",
    # viabilidade
    "FeasibilityProjector",
    "feasibility_projector",
    "FEASIBILITY_KINDS",
]
