"""Parity transduction from graphs to hypergraphs and the parity patterns behind it."""

from .patterns import (
    MODES,
    find_parity_extension,
    parity_pattern_B,
    parity_pattern_C,
    pattern_bits,
    superset_parity,
)
from .transduction import apply_parity_transduction, common_neighbor_parity, parity_transduction_work

__all__ = [
    "MODES",
    "find_parity_extension",
    "parity_pattern_B",
    "parity_pattern_C",
    "pattern_bits",
    "superset_parity",
    "apply_parity_transduction",
    "common_neighbor_parity",
    "parity_transduction_work",
]
