# src/core/config.py
from __future__ import annotations
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional, Tuple, Union
import json
import logging
import os

logger = logging.getLogger(__name__)

DENSE_CAP_ENV = "DQIR_DENSE_CAP"


@dataclass(frozen=True)
class Settings:
    """Tolerâncias e limites numéricos compartilhados por todos os módulos."""

    prune_tol: float = 1e-12          # coeficientes abaixo disso são descartados
    bool_tol: float = 1e-9            # validação de autovalores {0,1}
    equiv_tol: float = 1e-9           # equivalência restrita / exponenciais
    struct_tol: float = 1e-10         # entradas estruturalmente não nulas (PMG)
    generic_angle: float = 0.7345
    cross_angles: Tuple[float, ...] = (1.1931, 2.4077)
    seed: int = 0xD41
    dense_cap_qubits: int = 12
    f_lin_support_cap: int = 12
    gdpm_beam: Optional[int] = 64
    n_random_angles: int = 100

    @property
    def dense_cap_dim(self) -> int:
        return 2 ** self.dense_cap_qubits

    @classmethod
    def from_json(cls, file: Union[str, Path]) -> "Settings":
        with open(file, "r", encoding="utf-8") as f:
            cfg = json.load(f)
        known = {f.name for f in fields(cls)}
        unknown = set(cfg) - known
        if unknown:
            raise ValueError(f"Chaves de configuração desconhecidas: {sorted(unknown)}")
        if "cross_angles" in cfg:
            cfg["cross_angles"] = tuple(cfg["cross_angles"])
        return cls(**cfg).with_env()

    @classmethod
    def from_env(cls) -> "Settings":
        return cls().with_env()

    def with_env(self) -> "Settings":
        raw = os.getenv(DENSE_CAP_ENV)
        if not raw:
            return self
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"{DENSE_CAP_ENV} deve ser inteiro (qubits), recebido {raw!r}")
        if cap != self.dense_cap_qubits:
            logger.warning("Limite denso sobrescrito via %s: 2^%d", DENSE_CAP_ENV, cap)
        return replace(self, dense_cap_qubits=cap)


def get_settings() -> Settings:
    """Configuração padrão com overrides de ambiente (lida a cada chamada)."""
    return Settings.from_env()
