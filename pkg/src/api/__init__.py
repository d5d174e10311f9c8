# src/api/__init__.py
from .facade import Check, Pipeline, design_mixer
from .report import OPERATORS, build_case, sweep

__all__ = [
    # pipeline
    "Pipeline",
    "Check",
    "design_mixer",
    # relatório de profundidades
    "OPERATORS",
    "build_case",
    "sweep",
]
