# src/core/circuits/gates.py
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from src.core.errors import ContractError


class GateKind(str, Enum):
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    H = "h"
    X = "x"
    CNOT = "cnot"
    # macros
    CRY = "cry"
    MCRY = "mcry"
    APHI = "aphi"
    CAPHI = "caphi"
    TOFFOLI = "toffoli"
    PAULI_EXP = "pauli_exp"


PRIMITIVE_KINDS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.H, GateKind.X, GateKind.CNOT})
ONE_QUBIT_KINDS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.H, GateKind.X})
PARAMETRIC_KINDS = frozenset({
    GateKind.RX, GateKind.RY, GateKind.RZ,
    GateKind.CRY, GateKind.MCRY, GateKind.APHI, GateKind.CAPHI, GateKind.PAULI_EXP,
})
CONTROLLED_KINDS = frozenset({GateKind.CRY, GateKind.MCRY, GateKind.CAPHI})

# qubits "fixos" de cada tipo (alvo/par) antes dos controles
_HEAD = {GateKind.CRY: 1, GateKind.MCRY: 1, GateKind.CAPHI: 2}


def guess_gate_kind(name: str) -> GateKind:
    try:
        return GateKind(name.strip().lower())
    except ValueError:
        raise ContractError(f"Tipo de porta desconhecido: {name}") from None


@dataclass(frozen=True)
class Gate:
    """Porta sobre qubits nomeados por índice.

    Convenções de operandos:
      - ``cnot``: (controle, alvo)
      - ``cry``/``mcry``: (alvo, *controles), ``polarity[j]`` = valor ativo do controle j
      - ``aphi``: (a, b), mistura |a=1,b=0⟩ ↔ |a=0,b=1⟩
      - ``caphi``: (a, b, *controles)
      - ``toffoli``: (c1, c2, alvo)
      - ``pauli_exp``: qubits do suporte, ``pauli[j]`` é a letra do qubit j; exp(−iθP)

    ``fixed`` marca mudanças de base constantes, que o peephole pode cancelar.
    """

    kind: GateKind
    qubits: Tuple[int, ...]
    param: Optional[float] = None
    polarity: Optional[Tuple[int, ...]] = None
    pauli: Optional[str] = None
    fixed: bool = False

    def __post_init__(self):
        if not isinstance(self.kind, GateKind):
            object.__setattr__(self, "kind", guess_gate_kind(str(self.kind)))
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(set(qubits)) != len(qubits):
            raise ContractError(f"Operandos repetidos em {self.kind.value}: {qubits}")
        if any(q < 0 for q in qubits):
            raise ContractError(f"Índice de qubit negativo em {self.kind.value}: {qubits}")
        self._check_arity()
        if self.kind in PARAMETRIC_KINDS and self.param is None:
            raise ContractError(f"{self.kind.value} exige parâmetro")
        if self.kind in CONTROLLED_KINDS:
            n_ctrl = len(qubits) - _HEAD[self.kind]
            pol = (1,) * n_ctrl if self.polarity is None else tuple(int(p) for p in self.polarity)
            if len(pol) != n_ctrl or any(p not in (0, 1) for p in pol):
                raise ContractError(f"Polaridade inválida para {self.kind.value}: {self.polarity}")
            object.__setattr__(self, "polarity", pol)

    def _check_arity(self) -> None:
        n = len(self.qubits)
        k = self.kind
        if k in ONE_QUBIT_KINDS:
            ok = n == 1
        elif k in (GateKind.CNOT, GateKind.CRY, GateKind.APHI):
            ok = n == 2
        elif k == GateKind.MCRY:
            ok = n >= 3
        elif k == GateKind.CAPHI:
            ok = n >= 3
        elif k == GateKind.TOFFOLI:
            ok = n == 3
        else:
            ok = n >= 1 and self.pauli is not None and len(self.pauli) == n and set(self.pauli) <= set("XYZ")
        if not ok:
            raise ContractError(f"Operandos inválidos para {k.value}: {self.qubits} {self.pauli or ''}")

    # ---------- propriedades ----------
    @property
    def is_primitive(self) -> bool:
        return self.kind in PRIMITIVE_KINDS

    @property
    def is_one_qubit(self) -> bool:
        return self.kind in ONE_QUBIT_KINDS

    @property
    def target(self) -> int:
        if self.kind == GateKind.CNOT:
            return self.qubits[1]
        if self.kind == GateKind.TOFFOLI:
            return self.qubits[2]
        return self.qubits[0]

    @property
    def controls(self) -> Tuple[int, ...]:
        if self.kind in CONTROLLED_KINDS:
            return self.qubits[_HEAD[self.kind]:]
        if self.kind == GateKind.CNOT:
            return self.qubits[:1]
        if self.kind == GateKind.TOFFOLI:
            return self.qubits[:2]
        return ()

    def with_param(self, value: float) -> "Gate":
        return Gate(self.kind, self.qubits, value, self.polarity, self.pauli, self.fixed)

    def shifted(self, offset: int) -> "Gate":
        return Gate(self.kind, tuple(q + offset for q in self.qubits), self.param, self.polarity, self.pauli, self.fixed)

    def descriptor(self) -> str:
        """Rótulo estável usado para ordenação e desempate."""
        pol = "".join(str(p) for p in self.polarity) if self.polarity else ""
        ops = ",".join(str(q) for q in self.qubits)
        return f"{self.kind.value}[{ops}]{pol}{self.pauli or ''}"

    # ---------- serialização ----------
    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind.value, "qubits": list(self.qubits), "param": self.param}
        if self.polarity is not None:
            out["polarity"] = list(self.polarity)
        if self.pauli is not None:
            out["pauli"] = self.pauli
        if self.fixed:
            out["fixed"] = True
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Gate":
        try:
            return cls(
                guess_gate_kind(str(data["kind"])),
                tuple(data["qubits"]),
                None if data.get("param") is None else float(data["param"]),
                None if data.get("polarity") is None else tuple(data["polarity"]),
                data.get("pauli"),
                bool(data.get("fixed", False)),
            )
        except (KeyError, TypeError) as exc:
            raise ContractError(f"Porta inválida: {data!r}") from exc


# ---------- atalhos ----------

def rx(q: int, theta: float, fixed: bool = False) -> Gate:
    return Gate(GateKind.RX, (q,), theta, fixed=fixed)


def ry(q: int, theta: float) -> Gate:
    return Gate(GateKind.RY, (q,), theta)


def rz(q: int, theta: float) -> Gate:
    return Gate(GateKind.RZ, (q,), theta)


def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,), fixed=True)


def x(q: int) -> Gate:
    return Gate(GateKind.X, (q,), fixed=True)


def cnot(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def cry(target: int, control: int, theta: float, polarity: int = 1) -> Gate:
    return Gate(GateKind.CRY, (target, control), theta, (polarity,))


def mcry(target: int, controls: Sequence[int], theta: float, polarity: Optional[Sequence[int]] = None) -> Gate:
    return Gate(GateKind.MCRY, (target, *controls), theta, None if polarity is None else tuple(polarity))


def aphi(a: int, b: int, theta: float) -> Gate:
    return Gate(GateKind.APHI, (a, b), theta)


def caphi(a: int, b: int, controls: Sequence[int], theta: float, polarity: Optional[Sequence[int]] = None) -> Gate:
    return Gate(GateKind.CAPHI, (a, b, *controls), theta, None if polarity is None else tuple(polarity))


def toffoli(c1: int, c2: int, target: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2, target))


def pauli_exp(qubits: Sequence[int], letters: str, theta: float) -> Gate:
    return Gate(GateKind.PAULI_EXP, tuple(qubits), theta, pauli=letters.upper())


def controlled_ry(target: int, controls: Sequence[int], theta: float, polarity: Optional[Sequence[int]] = None) -> Gate:
    """R_Y com 0, 1 ou mais controles (ry, cry ou mcry)."""
    if not controls:
        return ry(target, theta)
    if len(controls) == 1:
        return cry(target, controls[0], theta, 1 if polarity is None else polarity[0])
    return mcry(target, controls, theta, polarity)
