# src/core/encodings/codes.py
"""Tabelas de códigos inteiro→bits e subconjuntos de bitmask.

Convenção de bits: o bit i do inteiro codificado é o qubit i do registrador
da variável (qubit 0 = menos significativo). As strings impressas seguem a
tabela usual, com o bit mais significativo à esquerda.
"""
from __future__ import annotations
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Tuple

from src.core.errors import ContractError, OutOfRangeError
from src.core.types.code import CodeKind, CodeSpec


def gray(k: int) -> int:
    return k ^ (k >> 1)


def _local_code(kind: CodeKind, v: int) -> int:
    return gray(v) if kind == CodeKind.GRAY else v


def _check_level(k: int, d: int) -> None:
    if not 0 <= k < d:
        raise OutOfRangeError(f"Valor {k} fora de 0..{d - 1}")


def codeword(k: int, d: int, code: CodeSpec) -> int:
    """Palavra de código de k como inteiro (bit i = qubit i)."""
    _check_level(k, d)
    if code.kind == CodeKind.SB:
        return k
    if code.kind == CodeKind.GRAY:
        return gray(k)
    if code.kind == CodeKind.UNARY:
        return 1 << k
    if code.kind == CodeKind.DOMAIN_WALL:
        return (1 << k) - 1
    block, local = divmod(k, code.g)
    return _local_code(code.local, local + 1) << (block * code.block_qubits)


@lru_cache(maxsize=None)
def codewords(d: int, code: CodeSpec) -> Tuple[int, ...]:
    """Palavras válidas na ordem dos valores 0..d-1."""
    return tuple(codeword(k, d, code) for k in range(d))


@lru_cache(maxsize=None)
def _decode_table(d: int, code: CodeSpec) -> Dict[int, int]:
    return {w: k for k, w in enumerate(codewords(d, code))}


def to_bitstring(word: int, n_bits: int) -> str:
    return format(word, f"0{n_bits}b") if n_bits else ""


def encode_int(k: int, d: int, code: CodeSpec) -> str:
    """Palavra de código como string, bit mais significativo à esquerda."""
    return to_bitstring(codeword(k, d, code), code.n_qubits(d))


def decode_word(word: int, d: int, code: CodeSpec) -> int:
    try:
        return _decode_table(d, code)[word]
    except KeyError:
        raise ContractError(f"Palavra inválida para {code.label} d={d}: {word}") from None


def decode_int(bits: str, d: int, code: CodeSpec) -> int:
    n = code.n_qubits(d)
    bits = bits.replace(" ", "")
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise ContractError(f"Bitstring inválida para {code.label} d={d}: {bits!r}")
    return decode_word(int(bits, 2), d, code)


def valid_codewords(d: int, code: CodeSpec) -> Tuple[str, ...]:
    n = code.n_qubits(d)
    return tuple(to_bitstring(w, n) for w in codewords(d, code))


def is_valid_word(word: int, d: int, code: CodeSpec) -> bool:
    return word in _decode_table(d, code)


@lru_cache(maxsize=None)
def bitmask(levels: Tuple[int, ...], d: int, code: CodeSpec) -> FrozenSet[int]:
    """Qubits (locais ao registrador) em que |k⟩⟨l| atua de forma não trivial."""
    if not levels:
        raise ContractError("bitmask exige ao menos um nível")
    for k in levels:
        _check_level(k, d)
    n = code.n_qubits(d)
    if code.is_compact:
        return frozenset(range(n))
    if code.kind == CodeKind.UNARY:
        return frozenset(levels)
    if code.kind == CodeKind.DOMAIN_WALL:
        lo, hi = min(levels), max(levels)
        return frozenset(range(max(lo - 1, 0), min(hi, d - 2) + 1))
    nb = code.block_qubits
    blocks = {k // code.g for k in levels}
    return frozenset(q for b in blocks for q in range(b * nb, (b + 1) * nb))


def block_of(k: int, code: CodeSpec) -> int:
    return k // code.g


def mask_string(mask: Iterable[int], n: int) -> str:
    """Representação '*'/'_' com o qubit mais alto à esquerda."""
    mask = set(mask)
    return "".join("*" if q in mask else "_" for q in reversed(range(n)))
