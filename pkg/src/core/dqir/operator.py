# src/core/dqir/operator.py
from __future__ import annotations
from dataclasses import dataclass
from functools import reduce
from numbers import Number as _Scalar
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union
import logging

import numpy as np
from scipy import sparse

from src.core.config import Settings
from src.core.errors import ContractError, DomainMismatchError
from .domain import DomainSpec
from .primitives import PrimitiveFactor, classify

logger = logging.getLogger(__name__)

_DEFAULTS = Settings()
_ENTRY_TOL = 1e-15       # entradas relativas ao pivô abaixo disso viram zero
_KEY_DECIMALS = 10       # precisão da chave estrutural (só baldes)
_MERGE_TOL = 1e-12       # desvio máximo da matriz densa ao fundir termos


def _matrix_key(m: np.ndarray) -> bytes:
    return (np.round(m, _KEY_DECIMALS) + (0.0 + 0.0j)).tobytes()


def _is_diag(m: np.ndarray) -> bool:
    return not np.any(m - np.diag(np.diag(m)))


@dataclass(frozen=True, eq=False)
class ProductTerm:
    """coeff · ⊗_α ℬ_α, identidade nas variáveis ausentes."""

    coeff: complex
    factors: Tuple[Tuple[str, np.ndarray], ...] = ()

    @property
    def support(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.factors)

    def factor(self, var: str) -> Optional[np.ndarray]:
        for v, m in self.factors:
            if v == var:
                return m
        return None

    def key(self) -> Tuple[Tuple[str, bytes], ...]:
        return tuple((v, _matrix_key(m)) for v, m in self.factors)

    def is_diagonal(self) -> bool:
        return all(_is_diag(m) for _, m in self.factors)

    def adjoint(self) -> "ProductTerm":
        return ProductTerm(
            complex(np.conj(self.coeff)),
            tuple((v, _frozen(m.conj().T)) for v, m in self.factors),
        )

    def describe(self) -> str:
        parts = [f"{classify(m).kind}{_short(classify(m))}[{v}]" for v, m in self.factors]
        return f"({self.coeff:.6g})" + ("·" + "·".join(parts) if parts else "·I")


def _short(f: PrimitiveFactor) -> str:
    p = f.params()
    if "k" in p and "l" in p:
        return f"({p['k']},{p['l']})"
    if "k" in p:
        return f"({p['k']})"
    if "coeffs" in p:
        return "(" + ",".join(f"{complex(c[0], c[1]).real:g}" for c in p["coeffs"]) + ")"
    return ""


def _frozen(m: np.ndarray) -> np.ndarray:
    arr = np.array(m, dtype=complex)
    arr.setflags(write=False)
    return arr


# ---------- forma canônica ----------

def _normalize(coeff: complex, factors: Iterable[Tuple[str, np.ndarray]], prune_tol: float):
    """Normaliza cada fator (pivô = primeira entrada de módulo máximo vale 1)."""
    out = []
    for var, m in factors:
        m = np.array(m, dtype=complex)
        mags = np.abs(m)
        top = float(mags.max()) if m.size else 0.0
        if top == 0.0:
            return None
        m[mags < _ENTRY_TOL * top] = 0.0
        idx = int(np.argmax(np.abs(m).ravel() >= top * (1.0 - 1e-12)))
        pivot = complex(m.flat[idx])
        if pivot != 1:
            m = m / pivot
            m.flat[idx] = 1.0
            coeff = coeff * pivot
        m.setflags(write=False)
        out.append((var, m))
    if abs(coeff) < prune_tol:
        return None
    return ProductTerm(complex(coeff), tuple(out))


def _gap(a: Tuple[Tuple[str, np.ndarray], ...], b: Tuple[Tuple[str, np.ndarray], ...]) -> float:
    return sum(float(np.abs(ma - mb).max()) for (_, ma), (_, mb) in zip(a, b))


def _groups(terms: List[ProductTerm], part) -> List[List[int]]:
    """Agrupa índices de termos cujos fatores `part(t)` coincidem.

    A chave arredondada só separa baldes; dentro do balde dois termos se
    juntam apenas se a troca de fatores move a matriz densa no máximo
    _MERGE_TOL.
    """
    buckets: Dict[tuple, List[List[int]]] = {}
    order: List[List[int]] = []
    for i, t in enumerate(terms):
        fs = part(t)
        clusters = buckets.setdefault(tuple((v, _matrix_key(m)) for v, m in fs), [])
        for cl in clusters:
            rep = terms[cl[0]]
            if _gap(part(rep), fs) * max(abs(rep.coeff), abs(t.coeff)) <= _MERGE_TOL:
                cl.append(i)
                break
        else:
            clusters.append([i])
            order.append(clusters[-1])
    return order


def _merge_equal(terms: List[ProductTerm], prune_tol: float) -> Tuple[List[ProductTerm], bool]:
    changed = False
    out = []
    for idxs in _groups(terms, lambda t: t.factors):
        base = terms[idxs[0]]
        if len(idxs) == 1:
            out.append(base)
            continue
        changed = True
        coeff = sum(terms[i].coeff for i in idxs)
        if abs(coeff) >= prune_tol:
            out.append(ProductTerm(complex(coeff), base.factors))
    return out, changed


def _merge_single_variable(terms: List[ProductTerm], domain: DomainSpec, prune_tol: float):
    """Combina termos que diferem apenas no fator de uma variável."""
    changed = False
    for var in domain.ids:
        having = [i for i, t in enumerate(terms) if t.factor(var) is not None]

        def rest(t: ProductTerm, var: str = var):
            return tuple(f for f in t.factors if f[0] != var)

        merged_idx = set()
        new_terms: Dict[int, Optional[ProductTerm]] = {}
        for local in _groups([terms[i] for i in having], rest):
            if len(local) < 2:
                continue
            idxs = [having[j] for j in local]
            changed = True
            combined = sum(terms[i].coeff * terms[i].factor(var) for i in idxs)
            base = terms[idxs[0]]
            factors = tuple((v, combined if v == var else m) for v, m in base.factors)
            new_terms[idxs[0]] = _normalize(1.0, factors, prune_tol)
            merged_idx.update(idxs)
        if not merged_idx:
            continue
        out = []
        for i, t in enumerate(terms):
            if i in new_terms:
                if new_terms[i] is not None:
                    out.append(new_terms[i])
            elif i not in merged_idx:
                out.append(t)
        terms = out
    return terms, changed


def _sort_key(domain: DomainSpec):
    index = {v: i for i, v in enumerate(domain.ids)}

    def key(t: ProductTerm):
        return (len(t.factors), tuple(index[v] for v in t.support), tuple(k for _, k in t.key()))

    return key


# ---------- operador ----------

Scalar = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class OperatorPoly:
    """Operador DQIR: soma ponderada de produtos de primitivas locais."""

    domain: DomainSpec
    terms: Tuple[ProductTerm, ...] = ()

    # ---------- construtores ----------
    @classmethod
    def zero(cls, domain: DomainSpec) -> "OperatorPoly":
        return cls(domain, ())

    @classmethod
    def constant(cls, domain: DomainSpec, c: Scalar) -> "OperatorPoly":
        if c == 0:
            return cls.zero(domain)
        return cls(domain, (ProductTerm(complex(c), ()),))

    @classmethod
    def identity(cls, domain: DomainSpec) -> "OperatorPoly":
        return cls.constant(domain, 1.0)

    @classmethod
    def primitive(cls, domain: DomainSpec, var: str, factor: PrimitiveFactor) -> "OperatorPoly":
        d = domain.d(var)
        factor.validate(d)
        return cls(domain, (ProductTerm(1.0 + 0j, ((var, _frozen(factor.matrix(d))),)),))

    @classmethod
    def sum_of(cls, domain: DomainSpec, ops: Iterable["OperatorPoly"]) -> "OperatorPoly":
        """Soma de muitos operadores com uma única simplificação."""
        terms: List[ProductTerm] = []
        for op in ops:
            if op.domain != domain:
                raise DomainMismatchError("Operandos com DomainSpec diferentes")
            terms.extend(op.terms)
        return cls(domain, tuple(terms)).simplify()

    @classmethod
    def product(cls, domain: DomainSpec, factors: Mapping[str, PrimitiveFactor], coeff: Scalar = 1.0) -> "OperatorPoly":
        """Termo único coeff · ⊗ fatores (ordenados pelo domínio)."""
        items = []
        for var in domain.ids:
            if var in factors:
                f = factors[var]
                f.validate(domain.d(var))
                items.append((var, _frozen(f.matrix(domain.d(var)))))
        unknown = set(factors) - set(domain.ids)
        if unknown:
            raise ContractError(f"Variáveis desconhecidas: {sorted(unknown)}")
        return cls(domain, (ProductTerm(complex(coeff), tuple(items)),))

    # ---------- álgebra ----------
    def _check(self, other: "OperatorPoly") -> None:
        if not isinstance(other, OperatorPoly):
            raise ContractError(f"Operando inválido: {type(other).__name__}")
        if other.domain != self.domain:
            raise DomainMismatchError("Operandos com DomainSpec diferentes")

    def _lift(self, other) -> "OperatorPoly":
        if isinstance(other, _Scalar):
            return OperatorPoly.constant(self.domain, other)
        self._check(other)
        return other

    def __add__(self, other) -> "OperatorPoly":
        other = self._lift(other)
        return OperatorPoly(self.domain, self.terms + other.terms).simplify()

    __radd__ = __add__

    def __neg__(self) -> "OperatorPoly":
        return self.scale(-1.0)

    def __sub__(self, other) -> "OperatorPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "OperatorPoly":
        return self._lift(other) + (-self)

    def scale(self, c: Scalar) -> "OperatorPoly":
        if c == 0:
            return OperatorPoly.zero(self.domain)
        return OperatorPoly(self.domain, tuple(ProductTerm(t.coeff * c, t.factors) for t in self.terms))

    def __mul__(self, other) -> "OperatorPoly":
        if isinstance(other, _Scalar):
            return self.scale(other)
        self._check(other)
        out = [_mul_terms(a, b, self.domain) for a in self.terms for b in other.terms]
        return OperatorPoly(self.domain, tuple(out)).simplify()

    def __rmul__(self, other) -> "OperatorPoly":
        if isinstance(other, _Scalar):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "OperatorPoly":
        if n < 0:
            raise ContractError("Potência negativa não suportada")
        result = OperatorPoly.identity(self.domain)
        for _ in range(n):
            result = result * self
        return result

    def adjoint(self) -> "OperatorPoly":
        return OperatorPoly(self.domain, tuple(t.adjoint() for t in self.terms))

    def simplify(self, prune_tol: Optional[float] = None) -> "OperatorPoly":
        tol = _DEFAULTS.prune_tol if prune_tol is None else prune_tol
        terms = []
        for t in self.terms:
            nt = _normalize(t.coeff, t.factors, tol)
            if nt is not None:
                terms.append(nt)
        before = len(self.terms)
        changed = True
        while changed:
            terms, c1 = _merge_equal(terms, tol)
            terms, c2 = _merge_single_variable(terms, self.domain, tol)
            changed = c1 or c2
        terms.sort(key=_sort_key(self.domain))
        if before != len(terms):
            logger.debug("simplify: %d -> %d termos", before, len(terms))
        return OperatorPoly(self.domain, tuple(terms))

    # ---------- consultas ----------
    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.simplify().terms

    def support(self) -> Tuple[str, ...]:
        used = {v for t in self.terms for v in t.support}
        return tuple(v for v in self.domain.ids if v in used)

    def is_diagonal(self) -> bool:
        return all(t.is_diagonal() for t in self.terms)

    def diagonal(self) -> np.ndarray:
        """Vetor de autovalores sobre os estados clássicos (índice misto-radix)."""
        if not self.is_diagonal():
            raise ContractError("diagonal() exige operador diagonal")
        out = np.zeros(self.domain.n_states, dtype=complex)
        for t in self.terms:
            vecs = []
            for var, d in reversed(self.domain.variables):
                m = t.factor(var)
                vecs.append(np.ones(d, dtype=complex) if m is None else np.diag(m))
            out += t.coeff * reduce(np.kron, vecs, np.ones(1, dtype=complex))
        return out

    def evaluate(self, x: Sequence[int]) -> complex:
        """⟨x|O|x⟩ para o estado clássico x."""
        if len(x) != len(self.domain):
            raise ContractError("Estado com número errado de variáveis")
        total = 0j
        for t in self.terms:
            val = t.coeff
            for var, m in t.factors:
                xi = x[self.domain.index_of(var)]
                val *= m[xi, xi]
            total += val
        return total

    def to_matrix(self) -> np.ndarray:
        """Matriz densa (sem checagem de limite; use simulator.to_dense)."""
        n = self.domain.n_states
        out = sparse.csr_matrix((n, n), dtype=complex)
        for t in self.terms:
            mats = []
            for var, d in reversed(self.domain.variables):
                m = t.factor(var)
                mats.append(sparse.identity(d, dtype=complex, format="csr") if m is None else sparse.csr_matrix(m))
            out = out + t.coeff * reduce(lambda a, b: sparse.kron(a, b, format="csr"), mats,
                                         sparse.identity(1, dtype=complex, format="csr"))
        return out.toarray()

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        if self.domain.n_states <= _DEFAULTS.dense_cap_dim:
            m = self.to_matrix()
            scale = max(1.0, float(np.abs(m).max(initial=0.0)))
            return bool(np.allclose(m, m.conj().T, atol=tol * scale, rtol=0.0))
        return (self - self.adjoint()).is_zero()

    def structurally_equal(self, other: "OperatorPoly", tol: float = 1e-12) -> bool:
        if other.domain != self.domain or len(other.terms) != len(self.terms):
            return False
        for a, b in zip(self.terms, other.terms):
            if a.support != b.support or abs(a.coeff - b.coeff) > tol * max(1.0, abs(a.coeff)):
                return False
            for (_, ma), (_, mb) in zip(a.factors, b.factors):
                if not np.allclose(ma, mb, atol=tol, rtol=0.0):
                    return False
        return True

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(t.describe() for t in self.terms)


def _mul_terms(a: ProductTerm, b: ProductTerm, domain: DomainSpec) -> ProductTerm:
    fa, fb = dict(a.factors), dict(b.factors)
    out = []
    for var in domain.ids:
        ma, mb = fa.get(var), fb.get(var)
        if ma is None and mb is None:
            continue
        if ma is None:
            m = mb
        elif mb is None:
            m = ma
        else:
            m = _frozen(ma @ mb)
        out.append((var, m))
    return ProductTerm(a.coeff * b.coeff, tuple(out))


# ---------- operações nomeadas ----------

def build_primitive(domain: DomainSpec, var: str, factor: PrimitiveFactor) -> OperatorPoly:
    return OperatorPoly.primitive(domain, var, factor)


def simplify(op: OperatorPoly) -> OperatorPoly:
    return op.simplify()


def algebra(op: str, *args) -> OperatorPoly:
    """Despacho por nome: add | mul | scale | adjoint."""
    if op == "add":
        return reduce(lambda a, b: a + b, args)
    if op == "mul":
        return reduce(lambda a, b: a * b, args)
    if op == "scale":
        target, c = args
        return target.scale(c)
    if op == "adjoint":
        (target,) = args
        return target.adjoint()
    raise ContractError(f"Operação algébrica desconhecida: {op}")
