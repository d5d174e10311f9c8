# src/core/encodings/pauli.py
from __future__ import annotations
from dataclasses import dataclass, field
from numbers import Number as _Scalar
from typing import Dict, Iterable, List, Mapping, Optional, Tuple
import json

import numpy as np

from src.core.config import Settings
from src.core.errors import ContractError

_DEFAULTS = Settings()
SCHEMA_VERSION = 1

# (x_mask, z_mask); Y no qubit q ⇔ bit q em ambas as máscaras
PauliKey = Tuple[int, int]

# produto de Paulis de um qubit: (a, b) -> (fase, resultado); I=0, X=1, Y=2, Z=3
_PRODUCT = {
    (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
    (1, 2): (1j, 3), (2, 1): (-1j, 3),
    (2, 3): (1j, 1), (3, 2): (-1j, 1),
    (3, 1): (1j, 2), (1, 3): (-1j, 2),
}


def _letter_code(x: int, z: int, q: int) -> int:
    xb, zb = (x >> q) & 1, (z >> q) & 1
    return {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}[(xb, zb)]


def _code_bits(code: int) -> Tuple[int, int]:
    return {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}[code]


def multiply_keys(a: PauliKey, b: PauliKey) -> Tuple[complex, PauliKey]:
    """Produto de duas strings de Pauli: fase · string."""
    ax, az = a
    bx, bz = b
    if not ((ax | az) & (bx | bz)):
        return 1.0, (ax | bx, az | bz)
    phase: complex = 1.0
    x = ax ^ bx
    z = az ^ bz
    overlap = (ax | az) & (bx | bz)
    q = 0
    while overlap >> q:
        if (overlap >> q) & 1:
            ph, res = _PRODUCT[(_letter_code(ax, az, q), _letter_code(bx, bz, q))]
            phase *= ph
            rx, rz = _code_bits(res)
            x = (x & ~(1 << q)) | (rx << q)
            z = (z & ~(1 << q)) | (rz << q)
        q += 1
    return phase, (x, z)


def key_label(key: PauliKey, n_qubits: int) -> str:
    """String com o caractere i = Pauli no qubit i (qubit 0 primeiro)."""
    x, z = key
    return "".join("IXYZ"[_letter_code(x, z, q)] for q in range(n_qubits))


def label_key(label: str) -> PauliKey:
    x = z = 0
    for q, ch in enumerate(label.upper()):
        if ch not in "IXYZ":
            raise ContractError(f"Caractere de Pauli inválido: {ch!r}")
        xb, zb = _code_bits("IXYZ".index(ch))
        x |= xb << q
        z |= zb << q
    return x, z


def support_of(key: PauliKey) -> Tuple[int, ...]:
    m = key[0] | key[1]
    return tuple(q for q in range(m.bit_length()) if (m >> q) & 1)


def _parity(values: np.ndarray, mask: int) -> np.ndarray:
    v = values & mask
    out = np.zeros_like(v)
    while np.any(v):
        out ^= v & 1
        v = v >> 1
    return out


@dataclass(frozen=True)
class PauliTerm:
    coeff: complex
    key: PauliKey

    @property
    def support(self) -> Tuple[int, ...]:
        return support_of(self.key)

    @property
    def is_identity(self) -> bool:
        return self.key == (0, 0)

    @property
    def is_diagonal(self) -> bool:
        return self.key[0] == 0

    def letter(self, q: int) -> str:
        return "IXYZ"[_letter_code(self.key[0], self.key[1], q)]


@dataclass
class PauliPoly:
    """Soma ponderada de strings de Pauli sobre ``n_qubits`` qubits."""

    n_qubits: int
    terms: Dict[PauliKey, complex] = field(default_factory=dict)

    # ---------- construtores ----------
    @classmethod
    def zero(cls, n_qubits: int) -> "PauliPoly":
        return cls(n_qubits, {})

    @classmethod
    def identity(cls, n_qubits: int, c: complex = 1.0) -> "PauliPoly":
        return cls(n_qubits, {(0, 0): complex(c)})

    @classmethod
    def from_labels(cls, n_qubits: int, items: Mapping[str, complex]) -> "PauliPoly":
        out = cls(n_qubits)
        for label, c in items.items():
            k = label_key(label)
            out.terms[k] = out.terms.get(k, 0j) + complex(c)
        return out.simplify()

    @classmethod
    def projector(cls, n_qubits: int, qubits: Iterable[int], bits: Iterable[int]) -> "PauliPoly":
        """Π_q |b_q⟩⟨b_q| nos qubits dados."""
        out = cls.identity(n_qubits)
        for q, b in zip(qubits, bits):
            sign = -1.0 if b else 1.0
            out = out * cls(n_qubits, {(0, 0): 0.5 + 0j, (0, 1 << q): 0.5 * sign + 0j})
        return out

    # ---------- álgebra ----------
    def _check(self, other: "PauliPoly") -> None:
        if not isinstance(other, PauliPoly):
            raise ContractError(f"Operando inválido: {type(other).__name__}")
        if other.n_qubits != self.n_qubits:
            raise ContractError(f"Número de qubits incompatível: {self.n_qubits} vs {other.n_qubits}")

    def copy(self) -> "PauliPoly":
        return PauliPoly(self.n_qubits, dict(self.terms))

    def __add__(self, other) -> "PauliPoly":
        if isinstance(other, _Scalar):
            other = PauliPoly.identity(self.n_qubits, other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0j) + c
        return PauliPoly(self.n_qubits, out).simplify()

    __radd__ = __add__

    def __neg__(self) -> "PauliPoly":
        return self.scale(-1.0)

    def __sub__(self, other) -> "PauliPoly":
        if isinstance(other, _Scalar):
            return self + (-other)
        return self + (-other)

    def scale(self, c: complex) -> "PauliPoly":
        return PauliPoly(self.n_qubits, {k: v * c for k, v in self.terms.items()}).simplify()

    def __mul__(self, other) -> "PauliPoly":
        if isinstance(other, _Scalar):
            return self.scale(other)
        self._check(other)
        out: Dict[PauliKey, complex] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                ph, k = multiply_keys(ka, kb)
                out[k] = out.get(k, 0j) + ph * ca * cb
        return PauliPoly(self.n_qubits, out).simplify()

    def __rmul__(self, other) -> "PauliPoly":
        if isinstance(other, _Scalar):
            return self.scale(other)
        return NotImplemented

    def tensor(self, other: "PauliPoly", offset: int) -> "PauliPoly":
        """Produto com ``other`` deslocado em ``offset`` qubits (suportes disjuntos)."""
        out: Dict[PauliKey, complex] = {}
        for ka, ca in self.terms.items():
            for (bx, bz), cb in other.terms.items():
                k = (ka[0] | (bx << offset), ka[1] | (bz << offset))
                out[k] = out.get(k, 0j) + ca * cb
        return PauliPoly(self.n_qubits, out).simplify()

    def shifted(self, offset: int, n_qubits: int) -> "PauliPoly":
        return PauliPoly(n_qubits, {(x << offset, z << offset): c for (x, z), c in self.terms.items()})

    def adjoint(self) -> "PauliPoly":
        return PauliPoly(self.n_qubits, {k: complex(np.conj(c)) for k, c in self.terms.items()})

    def simplify(self, prune_tol: Optional[float] = None) -> "PauliPoly":
        tol = _DEFAULTS.prune_tol if prune_tol is None else prune_tol
        return PauliPoly(self.n_qubits, {k: c for k, c in self.terms.items() if abs(c) >= tol})

    # ---------- consultas ----------
    def __len__(self) -> int:
        return len(self.terms)

    def is_empty(self) -> bool:
        return not self.simplify().terms

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= tol for c in self.simplify().terms.values())

    def is_diagonal(self) -> bool:
        return all(x == 0 for x, _ in self.terms)

    def support(self) -> Tuple[int, ...]:
        m = 0
        for x, z in self.terms:
            m |= x | z
        return tuple(q for q in range(self.n_qubits) if (m >> q) & 1)

    def sorted_terms(self) -> List[PauliTerm]:
        """Termos em ordem determinística (tamanho do suporte, depois string)."""
        items = [PauliTerm(c, k) for k, c in self.terms.items()]
        items.sort(key=lambda t: (len(t.support), t.support, key_label(t.key, self.n_qubits)))
        return items

    def matrix_elements(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """⟨rows[i]|P|cols[j]⟩ para listas de estados da base computacional."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        index = {int(r): i for i, r in enumerate(rows)}
        out = np.zeros((len(rows), len(cols)), dtype=complex)
        for (x, z), c in self.terms.items():
            n_y = bin(x & z).count("1")
            base = c * (1j ** n_y)
            images = cols ^ x
            signs = 1.0 - 2.0 * _parity(cols, z)
            for j, img in enumerate(images):
                i = index.get(int(img))
                if i is not None:
                    out[i, j] += base * signs[j]
        return out

    def diagonal(self) -> np.ndarray:
        """Diagonal sobre todos os 2^n estados (apenas termos diagonais)."""
        states = np.arange(2 ** self.n_qubits, dtype=np.int64)
        out = np.zeros(len(states), dtype=complex)
        for (x, z), c in self.terms.items():
            if x == 0:
                out += c * (1.0 - 2.0 * _parity(states, z))
        return out

    # ---------- serialização ----------
    def to_dict(self) -> Dict[str, object]:
        return {
            "schema_version": SCHEMA_VERSION,
            "n_qubits": self.n_qubits,
            "qubit_order": "string[i] = qubit i",
            "terms": [
                {"coeff": [t.coeff.real, t.coeff.imag], "string": key_label(t.key, self.n_qubits)}
                for t in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "PauliPoly":
        try:
            n = int(data["n_qubits"])
            out = cls(n)
            for item in data["terms"]:
                re, im = item["coeff"]
                k = label_key(item["string"])
                out.terms[k] = out.terms.get(k, 0j) + complex(float(re), float(im))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ContractError):
                raise
            raise ContractError(f"JSON de PauliPoly inválido: {exc}") from exc
        return out

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({t.coeff:.6g}) {key_label(t.key, self.n_qubits)}" for t in self.sorted_terms())
