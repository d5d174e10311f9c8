# src/core/dqir/primitives.py
"""Primitivas locais de uma variável (indicador, valor, transferência, geral).

Internamente toda primitiva vira uma matriz d×d (GeneralLocal); as classes
abaixo existem para construção legível e para recuperar o tipo na
serialização/impressão.
"""
from __future__ import annotations
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from src.core.errors import ContractError, OutOfRangeError


class PrimitiveFactor(ABC):
    """Interface base das primitivas de uma variável."""

    kind: str = "general"

    @abstractmethod
    def levels(self) -> Tuple[int, ...]:
        """Índices de nível referenciados pela primitiva."""

    @abstractmethod
    def matrix(self, d: int) -> np.ndarray:
        """Matriz d×d complexa da primitiva."""

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    def validate(self, d: int) -> None:
        for k in self.levels():
            if not 0 <= k < d:
                raise OutOfRangeError(f"Nível {k} fora do intervalo 0..{d - 1} ({self.kind})")

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "params": self.params()}


@dataclass(frozen=True)
class Indicator(PrimitiveFactor):
    """Projetor |k⟩⟨k|."""

    k: int
    kind = "indicator"

    def levels(self):
        return (self.k,)

    def matrix(self, d):
        self.validate(d)
        m = np.zeros((d, d), dtype=complex)
        m[self.k, self.k] = 1.0
        return m

    def params(self):
        return {"k": self.k}


@dataclass(frozen=True)
class Value(PrimitiveFactor):
    """Primitiva diagonal Σ_k a_k |k⟩⟨k|."""

    coeffs: Tuple[complex, ...]
    kind = "value"

    def __init__(self, coeffs: Sequence[complex]):
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def levels(self):
        return tuple(range(len(self.coeffs)))

    def validate(self, d):
        if len(self.coeffs) != d:
            raise ContractError(f"Value espera {d} coeficientes, recebeu {len(self.coeffs)}")

    def matrix(self, d):
        self.validate(d)
        return np.diag(np.asarray(self.coeffs, dtype=complex))

    def params(self):
        return {"coeffs": [_pack(c) for c in self.coeffs]}


def number(d: int) -> Value:
    """Operador número 𝒩 = diag(0, 1, ..., d-1)."""
    return Value(range(d))


@dataclass(frozen=True)
class OneWayTransfer(PrimitiveFactor):
    """Elemento |k⟩⟨l|."""

    k: int
    l: int
    kind = "transfer"

    def levels(self):
        return (self.k, self.l)

    def matrix(self, d):
        self.validate(d)
        m = np.zeros((d, d), dtype=complex)
        m[self.k, self.l] = 1.0
        return m

    def params(self):
        return {"k": self.k, "l": self.l}


@dataclass(frozen=True)
class SymmetricTransfer(PrimitiveFactor):
    """T^(k↔l) = |k⟩⟨l| + |l⟩⟨k|."""

    k: int
    l: int
    kind = "sym_transfer"

    def __post_init__(self):
        if self.k == self.l:
            raise ContractError("Transferência simétrica exige k != l")

    def levels(self):
        return (self.k, self.l)

    def matrix(self, d):
        self.validate(d)
        m = np.zeros((d, d), dtype=complex)
        m[self.k, self.l] = 1.0
        m[self.l, self.k] = 1.0
        return m

    def params(self):
        return {"k": self.k, "l": self.l}


@dataclass(frozen=True, eq=False)
class GeneralLocal(PrimitiveFactor):
    """Operador local arbitrário d×d."""

    data: np.ndarray
    kind = "general"

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ContractError(f"GeneralLocal exige matriz quadrada, recebeu forma {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def levels(self):
        return tuple(range(self.data.shape[0]))

    def validate(self, d):
        if self.data.shape[0] != d:
            raise ContractError(f"GeneralLocal {self.data.shape[0]}x{self.data.shape[0]} em variável com d={d}")

    def matrix(self, d):
        self.validate(d)
        return self.data.copy()

    def params(self):
        return {"matrix": [[_pack(c) for c in row] for row in self.data]}


# ---------- reconhecimento / (de)serialização ----------

def _pack(c: complex) -> list:
    c = complex(c)
    return [c.real, c.imag]


def _unpack(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def classify(matrix: np.ndarray) -> PrimitiveFactor:
    """Recupera a primitiva mais específica cuja matriz é exatamente ``matrix``."""
    d = matrix.shape[0]
    nz = list(zip(*np.nonzero(matrix)))
    off = [(i, j) for i, j in nz if i != j]
    if not off:
        if len(nz) == 1 and matrix[nz[0]] == 1:
            return Indicator(int(nz[0][0]))
        return Value(tuple(complex(x) for x in np.diag(matrix)))
    if len(nz) == 1 and matrix[nz[0]] == 1:
        return OneWayTransfer(int(nz[0][0]), int(nz[0][1]))
    if len(nz) == 2 and len(off) == 2:
        (i, j), (p, q) = off
        if (i, j) == (q, p) and matrix[i, j] == 1 and matrix[p, q] == 1:
            return SymmetricTransfer(int(min(i, j)), int(max(i, j)))
    return GeneralLocal(matrix)


def factor_from_dict(data: Dict[str, Any]) -> PrimitiveFactor:
    kind = data.get("kind")
    p = data.get("params", {})
    if kind == "indicator":
        return Indicator(int(p["k"]))
    if kind == "value":
        return Value(tuple(_unpack(c) for c in p["coeffs"]))
    if kind == "transfer":
        return OneWayTransfer(int(p["k"]), int(p["l"]))
    if kind == "sym_transfer":
        return SymmetricTransfer(int(p["k"]), int(p["l"]))
    if kind == "general":
        return GeneralLocal(np.array([[_unpack(c) for c in row] for row in p["matrix"]], dtype=complex))
    raise ContractError(f"Tipo de primitiva desconhecido: {kind}")
