"""Entropy orders, the existence classification and quantifier-free transductions."""

from .classify import classify
from .formulas import And, Atom, Const, Eq, Formula, Neq, Not, Or, QFTransduction, apply_qf_transduction
from .orders import geq_lex, geq_surj, stirling2, surjection_count, surjective_profile
from .synthesis import (
    UniformityReport,
    build_statistical_transduction,
    check_uniformity,
    transduction_multiplicities,
)
from .types import (
    DistinguishingEstimate,
    ck_type_entries,
    ck_type_of,
    estimate_distinguishing_advantage,
    eval_type_realization,
    find_distinguisher_c,
    realized_type_codes,
    type_count_bound,
)

__all__ = [
    "classify",
    "And",
    "Atom",
    "Const",
    "Eq",
    "Formula",
    "Neq",
    "Not",
    "Or",
    "QFTransduction",
    "apply_qf_transduction",
    "geq_lex",
    "geq_surj",
    "stirling2",
    "surjection_count",
    "surjective_profile",
    "UniformityReport",
    "build_statistical_transduction",
    "check_uniformity",
    "transduction_multiplicities",
    "DistinguishingEstimate",
    "ck_type_entries",
    "ck_type_of",
    "estimate_distinguishing_advantage",
    "eval_type_realization",
    "find_distinguisher_c",
    "realized_type_codes",
    "type_count_bound",
]
