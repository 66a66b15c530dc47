"""Finite Rado graphs and structures with verified combinatorial ingredients."""

from .construct import (
    RadoCertificate,
    cyclic_pattern,
    graph_from_certificate,
    minimal_feasible_n,
    part_boundaries,
    part_count,
    permutation_closure,
    rado_graph,
    rado_structure,
    rebuild_from_certificate,
    structure_from_certificate,
)
from .tournament import (
    Tournament,
    find_dominating_tournament,
    first_undominated,
    tournament_failure_bound,
    verify_tournament_domination,
)
from .universal import (
    PerfectHashFamily,
    UniversalSet,
    build_perfect_hash_family,
    build_universal_set,
    first_uncovered_phf,
    first_uncovered_universal,
    verify_phf,
    verify_universal_set,
)

__all__ = [
    "RadoCertificate",
    "cyclic_pattern",
    "graph_from_certificate",
    "minimal_feasible_n",
    "part_boundaries",
    "part_count",
    "permutation_closure",
    "rado_graph",
    "rado_structure",
    "rebuild_from_certificate",
    "structure_from_certificate",
    "Tournament",
    "find_dominating_tournament",
    "first_undominated",
    "tournament_failure_bound",
    "verify_tournament_domination",
    "PerfectHashFamily",
    "UniversalSet",
    "build_perfect_hash_family",
    "build_universal_set",
    "first_uncovered_phf",
    "first_uncovered_universal",
    "verify_phf",
    "verify_universal_set",
]
