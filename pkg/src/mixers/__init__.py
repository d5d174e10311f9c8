# src/mixers/__init__.py
from .criteria import CriteriaKind, CriteriaReport, design_pmg, verify_criteria
from .design import MixerDesign
from .gdpm import gdpm_search, search_union, simple_binary_mixer
from .generators import GENERATOR_KINDS, mixer_generator, ring_generator, shift_generator, sppm_generator
from .graphs import PartialMixerGraph, component_count, pmg_of
from .leakage import basis_states, leakage, leakage_many, max_leakage, uniform_superposition
from .library import GateTemplate, aphi_library, bridge_template, controlled_ry_library, default_library
from .ppm import PPM_MAX_D, ppm_construct
from .trotter import trotter_mixer

__all__ = [
    # geradores
    "shift_generator",
    "ring_generator",
    "sppm_generator",
    "mixer_generator",
    "GENERATOR_KINDS",
    "trotter_mixer",
    # grafos e biblioteca
    "PartialMixerGraph",
    "pmg_of",
    "component_count",
    "GateTemplate",
    "controlled_ry_library",
    "aphi_library",
    "default_library",
    "bridge_template",
    # construções
    "MixerDesign",
    "gdpm_search",
    "search_union",
    "simple_binary_mixer",
    "ppm_construct",
    "PPM_MAX_D",
    # verificação
    "verify_criteria",
    "design_pmg",
    "CriteriaKind",
    "CriteriaReport",
    "leakage",
    "leakage_many",
    "max_leakage",
    "basis_states",
    "uniform_superposition",
]
