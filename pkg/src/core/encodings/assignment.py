# src/core/encodings/assignment.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from src.core.dqir.domain import DomainSpec
from src.core.errors import ContractError
from src.core.types.code import CodeSpec
from .codes import codeword, codewords, to_bitstring, valid_codewords


@dataclass(frozen=True)
class EncodingAssignment:
    """Código por variável e layout de registradores contíguos.

    Os registradores seguem a ordem do ``DomainSpec``; o qubit 0 é o bit
    menos significativo da primeira variável.
    """

    domain: DomainSpec
    codes: Tuple[Tuple[str, CodeSpec], ...] = field(default=())

    def __post_init__(self):
        assigned = {v for v, _ in self.codes}
        missing = [v for v in self.domain.ids if v not in assigned]
        if missing:
            raise ContractError(f"Variáveis sem código: {missing}")
        extra = assigned - set(self.domain.ids)
        if extra:
            raise ContractError(f"Código para variáveis desconhecidas: {sorted(extra)}")
        ordered = tuple((v, dict(self.codes)[v]) for v in self.domain.ids)
        object.__setattr__(self, "codes", ordered)

    # ---------- construtores ----------
    @classmethod
    def uniform(cls, domain: DomainSpec, code: CodeSpec) -> "EncodingAssignment":
        return cls(domain, tuple((v, code) for v in domain.ids))

    @classmethod
    def mixed(cls, domain: DomainSpec, codes: Mapping[str, CodeSpec]) -> "EncodingAssignment":
        return cls(domain, tuple(codes.items()))

    @classmethod
    def from_json(cls, domain: DomainSpec, data: Union[str, Mapping[str, Any]]) -> "EncodingAssignment":
        """Aceita um código único (str ou {"kind": ...}) ou um mapa variável→código."""
        if isinstance(data, str) or (isinstance(data, Mapping) and "kind" in data):
            return cls.uniform(domain, CodeSpec.from_json(data))
        if not isinstance(data, Mapping):
            raise ContractError(f"Atribuição de códigos inválida: {data!r}")
        return cls.mixed(domain, {str(v): CodeSpec.from_json(c) for v, c in data.items()})

    def to_json(self) -> Dict[str, Any]:
        return {v: c.to_json() for v, c in self.codes}

    # ---------- layout ----------
    def code(self, var: str) -> CodeSpec:
        self.domain.index_of(var)
        return dict(self.codes)[var]

    def width(self, var: str) -> int:
        return self.code(var).n_qubits(self.domain.d(var))

    @property
    def offsets(self) -> Dict[str, int]:
        out, pos = {}, 0
        for var, d in self.domain.variables:
            out[var] = pos
            pos += dict(self.codes)[var].n_qubits(d)
        return out

    def offset(self, var: str) -> int:
        self.domain.index_of(var)
        return self.offsets[var]

    @property
    def n_qubits(self) -> int:
        return sum(c.n_qubits(d) for (_, c), (_, d) in zip(self.codes, self.domain.variables))

    def register(self, var: str) -> Tuple[int, ...]:
        start = self.offset(var)
        return tuple(range(start, start + self.width(var)))

    def layout(self) -> List[Dict[str, Any]]:
        return [
            {"id": v, "d": self.domain.d(v), "code": c.label, "qubits": list(self.register(v))}
            for v, c in self.codes
        ]

    # ---------- estados ----------
    def valid_codewords(self, var: str) -> Tuple[str, ...]:
        return valid_codewords(self.domain.d(var), self.code(var))

    def encode_state(self, x: Sequence[int]) -> int:
        """Inteiro da base computacional (bit q = qubit q) para o estado clássico x."""
        if len(x) != len(self.domain):
            raise ContractError("Estado com número errado de variáveis")
        word = 0
        for xi, (var, d) in zip(x, self.domain.variables):
            word |= codeword(int(xi), d, self.code(var)) << self.offset(var)
        return word

    def encode_bitstring(self, x: Sequence[int]) -> str:
        return to_bitstring(self.encode_state(x), self.n_qubits)

    def valid_states(self) -> np.ndarray:
        """Palavras codificadas de todos os estados, na ordem do índice DQIR."""
        arr = np.zeros(1, dtype=np.int64)
        offsets = self.offsets
        for var, d in reversed(self.domain.variables):
            words = np.array(codewords(d, self.code(var)), dtype=np.int64) << offsets[var]
            arr = (arr[:, None] + words[None, :]).ravel()
        return arr
