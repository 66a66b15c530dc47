"""Exhaustive and statistical extension-axiom checks."""

from .atomic import (
    atomic_type_entries,
    atomic_type_from_code,
    code_of_atomic_type,
    entry_count,
    type_count,
)
from .estimate import FailureEstimate, ea_failure_bound, estimate_ea_failure, wilson_interval
from .graph import check_ea_graph, first_unextendable, graph_ea_work, has_graph_extension
from .hypergraph import check_ea_hypergraph, has_hypergraph_extension, hypergraph_ea_work
from .structure import check_ea_structure, has_structure_extension, realizes_type, structure_ea_work

__all__ = [
    "atomic_type_entries",
    "atomic_type_from_code",
    "code_of_atomic_type",
    "entry_count",
    "type_count",
    "FailureEstimate",
    "ea_failure_bound",
    "estimate_ea_failure",
    "wilson_interval",
    "check_ea_graph",
    "first_unextendable",
    "graph_ea_work",
    "has_graph_extension",
    "check_ea_hypergraph",
    "has_hypergraph_extension",
    "hypergraph_ea_work",
    "check_ea_structure",
    "has_structure_extension",
    "realizes_type",
    "structure_ea_work",
]
