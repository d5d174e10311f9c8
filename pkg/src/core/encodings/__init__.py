# src/core/encodings/__init__.py
from .assignment import EncodingAssignment
from .codes import (
    bitmask,
    codeword,
    codewords,
    decode_int,
    decode_word,
    encode_int,
    gray,
    is_valid_word,
    mask_string,
    valid_codewords,
)
from .lowering import lower_element, lower_operator, lower_primitive, restricted_matrix
from .pauli import PauliPoly, PauliTerm, key_label, label_key, multiply_keys

__all__ = [
    # códigos
    "gray",
    "codeword",
    "codewords",
    "encode_int",
    "decode_int",
    "decode_word",
    "valid_codewords",
    "is_valid_word",
    "bitmask",
    "mask_string",
    # layout
    "EncodingAssignment",
    # Pauli
    "PauliPoly",
    "PauliTerm",
    "key_label",
    "label_key",
    "multiply_keys",
    # lowering
    "lower_element",
    "lower_primitive",
    "lower_operator",
    "restricted_matrix",
]
