# src/core/dqir/__init__.py
# Exporta os objetos principais do DQIR

from .domain import DomainSpec
from .primitives import (
    PrimitiveFactor, Indicator, Value, OneWayTransfer, SymmetricTransfer,
    GeneralLocal, number, classify,
)
from .operator import OperatorPoly, ProductTerm, build_primitive, algebra, simplify
from .boolean import compose_bool, is_boolean
from .functions import indicator, value, number_op, eq, neq, aeq, ad, cnz, pd, named_function
from .controlled import (
    controlled_generator, permutation_generator, transposition_generator, compute_into_register,
)
from .serialize import operator_to_dict, operator_from_dict, dumps, loads

__all__ = [
    # Domínio e primitivas
    'DomainSpec', 'PrimitiveFactor', 'Indicator', 'Value', 'OneWayTransfer',
    'SymmetricTransfer', 'GeneralLocal', 'number', 'classify',

    # Álgebra
    'OperatorPoly', 'ProductTerm', 'build_primitive', 'algebra', 'simplify',

    # Booleanos e funções nomeadas
    'compose_bool', 'is_boolean', 'indicator', 'value', 'number_op',
    'eq', 'neq', 'aeq', 'ad', 'cnz', 'pd', 'named_function',

    # Controle
    'controlled_generator', 'permutation_generator', 'transposition_generator',
    'compute_into_register',

    # Serialização
    'operator_to_dict', 'operator_from_dict', 'dumps', 'loads',
]
