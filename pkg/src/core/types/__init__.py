# src/core/types/__init__.py
from .code import CodeKind, CodeSpec, guess_kind, COMPACT_KINDS

__all__ = ["CodeKind", "CodeSpec", "guess_kind", "COMPACT_KINDS"]
