# src/core/errors.py
"""Hierarquia de exceções do toolkit.

As classes herdam de exceções nativas (ValueError, RuntimeError) para que
código que já trata esses tipos continue funcionando; a CLI usa a
hierarquia para escolher o código de saída.
"""
from __future__ import annotations


class DqirError(Exception):
    """Raiz de todas as exceções do toolkit."""


class ContractError(DqirError, ValueError):
    """Violação de pré-condição ou de contrato de uma operação."""


class DomainMismatchError(ContractError):
    """Operandos definidos sobre domínios (ou suportes) incompatíveis."""


class OutOfRangeError(ContractError):
    """Índice de nível fora de 0..d-1."""


class DimensionCapError(DqirError, ValueError):
    """Dimensão densa acima do limite configurado."""

    def __init__(self, dim: int, cap: int):
        self.dim = dim
        self.cap = cap
        super().__init__(
            f"Dimensão {dim} excede o limite denso {cap}; "
            f"ajuste DQIR_DENSE_CAP para verificações pontuais"
        )


class LibraryInsufficientError(DqirError, RuntimeError):
    """A busca GDPM esgotou a biblioteca sem conectar os estados válidos."""

    def __init__(self, best_components: int, message: str = ""):
        self.best_components = best_components
        super().__init__(
            message
            or f"Biblioteca insuficiente: melhor contagem de componentes = {best_components}"
        )
