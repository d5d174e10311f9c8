import pytest
import numpy as np

from src.core.config import Settings
from src.core.dqir.domain import DomainSpec
from src.core.types.code import CodeSpec

SEED = 0xD41

ALL_CODES = {
    "sb": CodeSpec.sb(),
    "gray": CodeSpec.gray(),
    "unary": CodeSpec.unary(),
    "dw": CodeSpec.domain_wall(),
    "bu": CodeSpec.block_unary(3, "gray"),
}


@pytest.fixture
def rng():
    """Gerador numpy semeado (reprodutível entre execuções)."""
    return np.random.default_rng(SEED)


@pytest.fixture
def settings():
    """Settings padrão sem overrides de ambiente."""
    return Settings()


@pytest.fixture
def pair3():
    """Duas variáveis com d=3."""
    return DomainSpec.of(("a", 3), ("b", 3))


@pytest.fixture
def single4():
    return DomainSpec.of(("x", 4))


@pytest.fixture(params=sorted(ALL_CODES))
def code(request):
    """Todos os códigos suportados."""
    return ALL_CODES[request.param]


@pytest.fixture(autouse=True)
def _no_dense_cap_env(monkeypatch):
    monkeypatch.delenv("DQIR_DENSE_CAP", raising=False)


def pytest_configure(config):
    # marcadores também valem quando o pytest roda a partir da raiz do repositório
    for line in (
        "unit: testes unitários (rápidos)",
        "integration: testes de integração (CLI, pipeline)",
        "slow: varreduras completas e busca de misturadores até d=16",
    ):
        config.addinivalue_line("markers", line)
