"""Core modules for radoforge."""

from .models import (
    MAX_ARITY,
    AtomicType,
    CKType,
    Classification,
    EAReport,
    GraphViolation,
    HypergraphViolation,
    Logic,
    ParityPattern,
    RadoforgeConfig,
    RelationSymbol,
    RunReport,
    Signature,
    StructureViolation,
    Verdict,
)
from .errors import (
    BudgetExceededError,
    CapacityError,
    ConfigError,
    ConstructionError,
    ExhaustedTriesError,
    InfeasibleParametersError,
    InternalInconsistencyError,
    InvalidArityError,
    OrderViolationError,
    ParseError,
    PreconditionError,
    RadoforgeError,
    SignatureMismatchError,
)
from .config_manager import ConfigManager, DEFAULT_BUDGET, ensure_within_budget, resolve_budget
from .logger import ExecutionLogger, LogEntry, RunAnalyzer
from .prng import Prng

__all__ = [
    "MAX_ARITY",
    "AtomicType",
    "CKType",
    "Classification",
    "EAReport",
    "GraphViolation",
    "HypergraphViolation",
    "Logic",
    "ParityPattern",
    "RadoforgeConfig",
    "RelationSymbol",
    "RunReport",
    "Signature",
    "StructureViolation",
    "Verdict",
    "BudgetExceededError",
    "CapacityError",
    "ConfigError",
    "ConstructionError",
    "ExhaustedTriesError",
    "InfeasibleParametersError",
    "InternalInconsistencyError",
    "InvalidArityError",
    "OrderViolationError",
    "ParseError",
    "PreconditionError",
    "RadoforgeError",
    "SignatureMismatchError",
    "ConfigManager",
    "DEFAULT_BUDGET",
    "ensure_within_budget",
    "resolve_budget",
    "ExecutionLogger",
    "LogEntry",
    "RunAnalyzer",
    "Prng",
]
