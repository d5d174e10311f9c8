# src/core/dqir/domain.py
from __future__ import annotations
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

from src.core.errors import ContractError


@dataclass(frozen=True)
class DomainSpec:
    """Domínio ordenado de variáveis discretas (id, cardinalidade).

    O índice de um estado clássico é misto-radix com a primeira variável
    declarada como dígito menos significativo.
    """

    variables: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for var, d in self.variables:
            if var in seen:
                raise ContractError(f"Variável duplicada no domínio: {var}")
            if int(d) < 2:
                raise ContractError(f"Cardinalidade de {var} deve ser >= 2, recebido {d}")
            seen.add(var)

    @classmethod
    def of(cls, *pairs: Tuple[str, int]) -> "DomainSpec":
        return cls(tuple((str(v), int(d)) for v, d in pairs))

    @classmethod
    def uniform(cls, prefix: str, count: int, d: int) -> "DomainSpec":
        return cls(tuple((f"{prefix}{i}", int(d)) for i in range(count)))

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.variables)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(d for _, d in self.variables)

    @property
    def n_states(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def __contains__(self, var: str) -> bool:
        return var in self._index

    def __len__(self) -> int:
        return len(self.variables)

    @property
    def _index(self) -> Dict[str, int]:
        return {v: i for i, (v, _) in enumerate(self.variables)}

    def index_of(self, var: str) -> int:
        try:
            return self._index[var]
        except KeyError:
            raise ContractError(f"Variável desconhecida: {var}") from None

    def d(self, var: str) -> int:
        return self.variables[self.index_of(var)][1]

    def states(self) -> Iterator[Tuple[int, ...]]:
        """Estados clássicos na ordem do índice misto-radix."""
        for digits in product(*(range(d) for d in reversed(self.dims))):
            yield tuple(reversed(digits))

    def state_index(self, x: Sequence[int]) -> int:
        idx, stride = 0, 1
        for xi, d in zip(x, self.dims):
            if not 0 <= xi < d:
                raise ContractError(f"Valor {xi} fora de 0..{d - 1}")
            idx += xi * stride
            stride *= d
        return idx

    def to_json(self) -> List[Dict[str, object]]:
        return [{"id": v, "d": d} for v, d in self.variables]

    @classmethod
    def from_json(cls, data: Sequence[Dict[str, object]]) -> "DomainSpec":
        return cls(tuple((str(item["id"]), int(item["d"])) for item in data))
