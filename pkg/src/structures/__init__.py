"""Relational structures, graphs, hypergraphs and their samplers."""

from .combinatorics import (
    combinations_array,
    falling_factorial,
    restricted_growth_strings,
    rgs_by_class_count,
    word_count,
)
from .graphs import EDGE_SIGNATURE, Graph, Hypergraph, graph_from_structure, structure_from_graph
from .relational import CELL_CAP, RelStructure, check_capacity, encode_tuple
from .sampling import (
    enumerate_structures,
    iter_structures,
    sample_random_graph,
    sample_random_hypergraph,
    sample_random_structure,
    structure_cell_count,
    structure_codes,
)

__all__ = [
    "combinations_array",
    "falling_factorial",
    "restricted_growth_strings",
    "rgs_by_class_count",
    "word_count",
    "EDGE_SIGNATURE",
    "Graph",
    "Hypergraph",
    "graph_from_structure",
    "structure_from_graph",
    "CELL_CAP",
    "RelStructure",
    "check_capacity",
    "encode_tuple",
    "enumerate_structures",
    "iter_structures",
    "sample_random_graph",
    "sample_random_hypergraph",
    "sample_random_structure",
    "structure_cell_count",
    "structure_codes",
]
