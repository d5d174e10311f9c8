# src/problems/instances.py
"""Instâncias das cinco classes de problema e leitura a partir de JSON.

Convenções de variáveis:
  - coloring: uma variável por vértice, valor = cor;
  - tsp/sms: variável por posição (``p0``…, ``s0``…), valor = cidade/tarefa;
  - portfolio: variável por lote (``z0``…), níveis {0,1,2} = {short, no-hold, long};
  - ilp: variáveis ``x0``… com cardinalidades próprias.

Instâncias com M=1 usam d=2 para a única variável; o nível 1 é um valor
inexistente, de custo zero e fora do conjunto viável.
"""
from __future__ import annotations
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, ClassVar, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.dqir.domain import DomainSpec
from src.core.errors import ContractError

SCHEMA_VERSION = 1


def _as_matrix(data, name: str) -> np.ndarray:
    try:
        m = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ContractError(f"{name} deve ser matriz numérica") from exc
    if m.ndim != 2:
        raise ContractError(f"{name} deve ser bidimensional, recebido shape {m.shape}")
    return m


def _as_vector(data, name: str, length: Optional[int] = None) -> np.ndarray:
    v = np.array(data, dtype=float).ravel()
    if length is not None and len(v) != length:
        raise ContractError(f"{name} deve ter {length} entradas, recebido {len(v)}")
    return v


def _position_domain(prefix: str, m: int) -> DomainSpec:
    if m < 1:
        raise ContractError("Instância precisa de ao menos um elemento")
    return DomainSpec.uniform(prefix, m, max(m, 2))


class ProblemInstance(ABC):
    """Base comum: domínio DQIR, avaliador clássico e (de)serialização."""

    kind: ClassVar[str] = "base"

    @abstractmethod
    def domain(self) -> DomainSpec: ...

    @abstractmethod
    def classical_cost(self, x: Sequence[int]) -> float:
        """Avaliador clássico independente do operador."""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]: ...

    def feasibility_kind(self) -> str:
        return "all_valid"


# ---------- coloração ----------

@dataclass(frozen=True)
class ColoringInstance(ProblemInstance):
    edges: Tuple[Tuple[str, str], ...]
    d: int
    nodes: Tuple[str, ...] = ()

    kind: ClassVar[str] = "coloring"

    def __post_init__(self):
        edges = tuple((str(a), str(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        nodes = tuple(str(n) for n in self.nodes)
        if not nodes:
            seen: List[str] = []
            for a, b in edges:
                for v in (a, b):
                    if v not in seen:
                        seen.append(v)
            nodes = tuple(seen)
        object.__setattr__(self, "nodes", nodes)
        known = set(nodes)
        for a, b in edges:
            if a not in known or b not in known:
                raise ContractError(f"Aresta ({a},{b}) referencia vértice desconhecido")
            if a == b:
                raise ContractError(f"Laço no vértice {a}")
        if self.d < 2:
            raise ContractError("Coloração exige d >= 2 cores")
        if not nodes:
            raise ContractError("Grafo sem vértices")

    @classmethod
    def complete(cls, n: int, d: int) -> "ColoringInstance":
        nodes = tuple(f"v{i}" for i in range(n))
        edges = tuple((nodes[i], nodes[j]) for i in range(n) for j in range(i + 1, n))
        return cls(edges, d, nodes)

    def domain(self) -> DomainSpec:
        return DomainSpec.of(*((n, self.d) for n in self.nodes))

    def classical_cost(self, x):
        color = dict(zip(self.nodes, x))
        return float(sum(1 for a, b in self.edges if color[a] == color[b]))

    def to_dict(self):
        return {"kind": self.kind, "nodes": list(self.nodes), "edges": [list(e) for e in self.edges], "d": self.d}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(tuple(e) for e in data.get("edges", [])), int(data["d"]), tuple(data.get("nodes", ())))


# ---------- TSP ----------

@dataclass(frozen=True, eq=False)
class TspInstance(ProblemInstance):
    distances: np.ndarray

    kind: ClassVar[str] = "tsp"

    def __post_init__(self):
        m = _as_matrix(self.distances, "distances")
        if m.shape[0] != m.shape[1]:
            raise ContractError(f"Matriz de distâncias deve ser quadrada, recebido {m.shape}")
        if not np.allclose(m, m.T, atol=1e-12, rtol=0.0):
            raise ContractError("TSP assimétrico não é suportado (distâncias devem ser simétricas)")
        object.__setattr__(self, "distances", m)

    @property
    def m(self) -> int:
        return self.distances.shape[0]

    def domain(self):
        return _position_domain("p", self.m)

    def classical_cost(self, x):
        """Comprimento do ciclo x_0 → x_1 → … → x_{M−1} → x_0."""
        total = 0.0
        for a in range(self.m):
            k, l = x[a], x[(a + 1) % self.m]
            if k < self.m and l < self.m and k != l:
                total += self.distances[k, l]
        return total

    def feasibility_kind(self):
        return "permutation"

    def brute_force(self) -> Tuple[float, Tuple[int, ...]]:
        best = min(permutations(range(self.m)), key=self.classical_cost)
        return self.classical_cost(best), best

    def to_dict(self):
        return {"kind": self.kind, "distances": self.distances.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data["distances"])


# ---------- SMS ----------

@dataclass(frozen=True, eq=False)
class SmsInstance(ProblemInstance):
    processing: np.ndarray
    deadlines: np.ndarray
    weights: Optional[np.ndarray] = None
    weighted: bool = True

    kind: ClassVar[str] = "sms"

    def __post_init__(self):
        p = _as_vector(self.processing, "processing")
        object.__setattr__(self, "processing", p)
        object.__setattr__(self, "deadlines", _as_vector(self.deadlines, "deadlines", len(p)))
        w = np.ones(len(p)) if self.weights is None else _as_vector(self.weights, "weights", len(p))
        object.__setattr__(self, "weights", w)
        if not len(p):
            raise ContractError("SMS exige ao menos uma tarefa")

    @property
    def m(self) -> int:
        return len(self.processing)

    @property
    def effective_weights(self) -> np.ndarray:
        return self.weights if self.weighted else np.ones(self.m)

    def domain(self):
        return _position_domain("s", self.m)

    def classical_cost(self, x):
        """Σ_k w_k (s_k + p_k − d_k) para a ordem de tarefas x."""
        w = self.effective_weights
        total, start = 0.0, 0.0
        for job in x:
            if job >= self.m:
                continue
            total += w[job] * (start + self.processing[job] - self.deadlines[job])
            start += self.processing[job]
        return total

    def feasibility_kind(self):
        return "permutation"

    def to_dict(self):
        return {
            "kind": self.kind,
            "processing": self.processing.tolist(),
            "deadlines": self.deadlines.tolist(),
            "weights": self.weights.tolist(),
            "weighted": self.weighted,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["processing"], data["deadlines"], data.get("weights"), bool(data.get("weighted", True)))


# ---------- portfólio ----------

Z_LEVELS = (-1.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class PortfolioInstance(ProblemInstance):
    risk: np.ndarray
    returns: np.ndarray
    previous: Tuple[int, ...]
    lam: float = 0.5
    trade_cost: float = 0.0
    target: int = 0

    kind: ClassVar[str] = "portfolio"

    def __post_init__(self):
        mu = _as_vector(self.returns, "returns")
        m = len(mu)
        sigma = _as_matrix(self.risk, "risk")
        if sigma.shape != (m, m):
            raise ContractError(f"Covariância deve ser {m}x{m}, recebido {sigma.shape}")
        if not np.allclose(sigma, sigma.T, atol=1e-12, rtol=0.0):
            raise ContractError("Covariância deve ser simétrica")
        prev = tuple(int(y) for y in self.previous)
        if len(prev) != m:
            raise ContractError(f"Posição anterior deve ter {m} entradas")
        if any(y not in (-1, 0, 1) for y in prev):
            raise ContractError(f"Posição anterior fora de {{-1,0,+1}}: {prev}")
        if not 0.0 <= self.lam <= 1.0:
            raise ContractError(f"λ deve estar em [0,1], recebido {self.lam}")
        object.__setattr__(self, "returns", mu)
        object.__setattr__(self, "risk", sigma)
        object.__setattr__(self, "previous", prev)

    @property
    def m(self) -> int:
        return len(self.returns)

    def domain(self):
        return DomainSpec.uniform("z", self.m, 3)

    def positions(self, x) -> np.ndarray:
        return np.array([Z_LEVELS[v] for v in x])

    def classical_cost(self, x):
        z = self.positions(x)
        rr = self.lam * float(z @ self.risk @ z) - (1.0 - self.lam) * float(self.returns @ z)
        tc = self.trade_cost * sum(1 for v, y in zip(x, self.previous) if v != y + 1)
        return rr + tc

    def feasibility_kind(self):
        return "sum_equals"

    def to_dict(self):
        return {
            "kind": self.kind,
            "risk": self.risk.tolist(),
            "returns": self.returns.tolist(),
            "previous": list(self.previous),
            "lam": self.lam,
            "trade_cost": self.trade_cost,
            "target": self.target,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            data["risk"], data["returns"], tuple(data["previous"]),
            float(data.get("lam", 0.5)), float(data.get("trade_cost", 0.0)), int(data.get("target", 0)),
        )


# ---------- ILP ----------

@dataclass(frozen=True, eq=False)
class IlpInstance(ProblemInstance):
    """max c·x sujeito a A x ≤ b, x_α ∈ {0..d_α−1}."""

    objective: np.ndarray
    dims: Tuple[int, ...]
    matrix: Optional[np.ndarray] = None
    bounds: Optional[np.ndarray] = None

    kind: ClassVar[str] = "ilp"

    def __post_init__(self):
        c = _as_vector(self.objective, "objective")
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != len(c):
            raise ContractError(f"objective tem {len(c)} entradas, dims tem {len(dims)}")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "dims", dims)
        if self.matrix is None:
            object.__setattr__(self, "matrix", np.zeros((0, len(c))))
            object.__setattr__(self, "bounds", np.zeros(0))
            return
        a = _as_matrix(self.matrix, "matrix")
        if a.shape[1] != len(c):
            raise ContractError(f"A tem {a.shape[1]} colunas, esperado {len(c)}")
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "bounds", _as_vector(self.bounds, "bounds", a.shape[0]))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(f"x{i}" for i in range(len(self.dims)))

    def domain(self):
        return DomainSpec.of(*zip(self.variables, self.dims))

    def classical_cost(self, x):
        return float(self.objective @ np.asarray(x, dtype=float))

    def rows(self) -> List[Tuple[Dict[str, float], float]]:
        """Linhas de restrição como (coeficientes por variável, limite)."""
        out = []
        for row, b in zip(self.matrix, self.bounds):
            out.append(({v: float(a) for v, a in zip(self.variables, row) if a != 0}, float(b)))
        return out

    def is_feasible(self, x) -> bool:
        return bool(np.all(self.matrix @ np.asarray(x, dtype=float) <= self.bounds + 1e-12))

    def to_dict(self):
        return {
            "kind": self.kind,
            "objective": self.objective.tolist(),
            "dims": list(self.dims),
            "matrix": self.matrix.tolist(),
            "bounds": self.bounds.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["objective"], tuple(data["dims"]), data.get("matrix"), data.get("bounds"))


# ---------- fábrica ----------

_KINDS = {
    "coloring": ColoringInstance,
    "graph_coloring": ColoringInstance,
    "tsp": TspInstance,
    "sms": SmsInstance,
    "scheduling": SmsInstance,
    "portfolio": PortfolioInstance,
    "ilp": IlpInstance,
}


def load_instance(data: Dict[str, Any]) -> ProblemInstance:
    """Recebe o bloco "problem" de um job e devolve a instância tipada."""
    kind = str(data.get("kind", "")).lower()
    cls = _KINDS.get(kind)
    if cls is None:
        raise ContractError(f"Tipo de problema não suportado: {kind or '<vazio>'}")
    try:
        return cls.from_dict(data)
    except KeyError as exc:
        raise ContractError(f"Campo obrigatório ausente em {kind}: {exc}") from exc
