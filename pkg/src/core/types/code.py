# src/core/types/code.py
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Union

from src.core.errors import ContractError


class CodeKind(str, Enum):
    SB = "sb"
    GRAY = "gray"
    UNARY = "unary"
    DOMAIN_WALL = "dw"
    BLOCK_UNARY = "bu"


_ALIASES = {
    "sb": CodeKind.SB,
    "binary": CodeKind.SB,
    "standard_binary": CodeKind.SB,
    "gray": CodeKind.GRAY,
    "unary": CodeKind.UNARY,
    "one_hot": CodeKind.UNARY,
    "onehot": CodeKind.UNARY,
    "dw": CodeKind.DOMAIN_WALL,
    "domain_wall": CodeKind.DOMAIN_WALL,
    "bu": CodeKind.BLOCK_UNARY,
    "block_unary": CodeKind.BLOCK_UNARY,
}

COMPACT_KINDS = (CodeKind.SB, CodeKind.GRAY)


def guess_kind(name: str) -> CodeKind:
    if not name:
        raise ContractError("Nome de código vazio")
    key = name.strip().lower().replace("-", "_")
    if key not in _ALIASES:
        raise ContractError(f"Código não suportado: {name}")
    return _ALIASES[key]


@dataclass(frozen=True)
class CodeSpec:
    """Seleção de código inteiro→bits para uma variável.

    Para block unary, ``g`` é o tamanho do bloco e ``local`` o código
    compacto usado dentro de cada bloco.
    """

    kind: CodeKind
    g: Optional[int] = None
    local: Optional[CodeKind] = None

    def __post_init__(self):
        if self.kind == CodeKind.BLOCK_UNARY:
            if self.g is None or self.g < 1:
                raise ContractError("Block unary exige g >= 1")
            if self.local not in COMPACT_KINDS:
                raise ContractError("Block unary exige código local sb ou gray")
        elif self.g is not None or self.local is not None:
            raise ContractError(f"Parâmetros g/local só valem para block unary, não {self.kind.value}")

    # ---------- construtores ----------
    @classmethod
    def sb(cls) -> "CodeSpec":
        return cls(CodeKind.SB)

    @classmethod
    def gray(cls) -> "CodeSpec":
        return cls(CodeKind.GRAY)

    @classmethod
    def unary(cls) -> "CodeSpec":
        return cls(CodeKind.UNARY)

    @classmethod
    def domain_wall(cls) -> "CodeSpec":
        return cls(CodeKind.DOMAIN_WALL)

    @classmethod
    def block_unary(cls, g: int = 3, local: Union[str, CodeKind] = CodeKind.GRAY) -> "CodeSpec":
        return cls(CodeKind.BLOCK_UNARY, g=g, local=guess_kind(local) if isinstance(local, str) else local)

    @classmethod
    def parse(cls, text: str) -> "CodeSpec":
        """Aceita 'gray', 'sb', 'unary', 'dw' ou 'bu:3:gray'."""
        parts = text.strip().split(":")
        kind = guess_kind(parts[0])
        if kind != CodeKind.BLOCK_UNARY:
            if len(parts) != 1:
                raise ContractError(f"Código inválido: {text}")
            return cls(kind)
        g = int(parts[1]) if len(parts) > 1 else 3
        local = parts[2] if len(parts) > 2 else "gray"
        return cls.block_unary(g, local)

    @classmethod
    def from_json(cls, data: Union[str, Dict[str, Any]]) -> "CodeSpec":
        if isinstance(data, str):
            return cls.parse(data)
        kind = data.get("kind")
        if isinstance(kind, dict):
            if "bu" not in kind:
                raise ContractError(f"Código inválido: {data}")
            params = kind["bu"]
            return cls.block_unary(int(params.get("g", 3)), params.get("local", "gray"))
        if not isinstance(kind, str):
            raise ContractError(f"Código inválido: {data}")
        return cls.parse(kind)

    def to_json(self) -> Dict[str, Any]:
        if self.kind == CodeKind.BLOCK_UNARY:
            return {"kind": {"bu": {"g": self.g, "local": self.local.value}}}
        return {"kind": self.kind.value}

    # ---------- propriedades ----------
    @property
    def is_compact(self) -> bool:
        return self.kind in COMPACT_KINDS

    @property
    def label(self) -> str:
        if self.kind == CodeKind.BLOCK_UNARY:
            return f"bu:{self.g}:{self.local.value}"
        return self.kind.value

    @property
    def block_qubits(self) -> int:
        """Qubits por bloco (apenas block unary)."""
        return int(self.g).bit_length()

    def n_blocks(self, d: int) -> int:
        return -(-d // self.g)

    def n_qubits(self, d: int) -> int:
        if d < 2:
            raise ContractError(f"Cardinalidade deve ser >= 2, recebido {d}")
        if self.kind in COMPACT_KINDS:
            return (d - 1).bit_length()
        if self.kind == CodeKind.UNARY:
            return d
        if self.kind == CodeKind.DOMAIN_WALL:
            return d - 1
        return self.n_blocks(d) * self.block_qubits
