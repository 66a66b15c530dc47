"""
Core data models for radoforge.

Pydantic models for the small, validated values that travel between
modules and out through the CLI: signatures, checker reports, types,
classification verdicts, run reports and configuration. Array-backed
objects (graphs, structures, tournaments) live next to their algorithms
as dataclasses.
"""

import json
import re
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_ARITY = 8
NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class RelationSymbol(BaseModel):
    """A named relation symbol with its arity."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Identifier, unique within a signature")
    arity: int = Field(..., description="Number of arguments, 1..MAX_ARITY")

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not NAME_PATTERN.match(value):
            raise ValueError(f"invalid relation name: {value!r}")
        return value

    @field_validator("arity")
    @classmethod
    def _check_arity(cls, value: int) -> int:
        if not 1 <= value <= MAX_ARITY:
            raise ValueError(f"arity must be in 1..{MAX_ARITY}, got {value}")
        return value


class Signature(BaseModel):
    """
    Ordered list of relation symbols.

    Declaration order matters: it fixes relation indices, the canonical
    atomic-type enumeration and the routing chosen by transduction synthesis.
    """
    model_config = ConfigDict(frozen=True)

    relations: Tuple[RelationSymbol, ...] = Field(default_factory=tuple)

    @model_validator(mode="after")
    def _check_unique(self) -> "Signature":
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {names}")
        return self

    @classmethod
    def of(cls, *pairs: Tuple[str, int]) -> "Signature":
        return cls(relations=tuple(RelationSymbol(name=n, arity=a) for n, a in pairs))

    @classmethod
    def from_arities(cls, arities, prefix: str = "R") -> "Signature":
        """Signature R1, R2, ... with the given arities."""
        return cls.of(*[(f"{prefix}{i + 1}", a) for i, a in enumerate(arities)])

    @classmethod
    def parse_inline(cls, text: str) -> "Signature":
        """Parse the command-line form `name arity; name arity; ...`."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ValueError(f"expected 'name arity', got {chunk!r}")
            pairs.append((parts[0], int(parts[1])))
        if not pairs:
            raise ValueError("empty signature")
        return cls.of(*pairs)

    def to_inline(self) -> str:
        return "; ".join(f"{r.name} {r.arity}" for r in self.relations)

    @property
    def arities(self) -> Tuple[int, ...]:
        return tuple(r.arity for r in self.relations)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(r.name for r in self.relations)

    @property
    def max_arity(self) -> int:
        return max(self.arities, default=0)

    def index_of(self, name: str) -> int:
        for i, r in enumerate(self.relations):
            if r.name == name:
                return i
        raise KeyError(name)

    def is_all_unary(self) -> bool:
        return all(a == 1 for a in self.arities)

    def __len__(self) -> int:
        return len(self.relations)


# --- extension-axiom reports -------------------------------------------------

AtomicEntry = Tuple[int, Tuple[int, ...]]


class AtomicType(BaseModel):
    """
    k-atomic type: the set of (relation index, index tuple) facts that hold
    when index 0 denotes the new element and 1..k the fixed ones.
    """
    model_config = ConfigDict(frozen=True)

    k: int
    entries: FrozenSet[AtomicEntry] = Field(default_factory=frozenset)

    def validate_against(self, sig: Signature) -> None:
        for rel, idx in self.entries:
            if not 0 <= rel < len(sig):
                raise ValueError(f"relation index {rel} out of range")
            if len(idx) != sig.arities[rel]:
                raise ValueError(f"entry {idx} has wrong arity for relation {rel}")
            if 0 not in idx or any(not 0 <= i <= self.k for i in idx):
                raise ValueError(f"bad index tuple {idx}")

    def sorted_entries(self) -> List[AtomicEntry]:
        return sorted(self.entries)


class GraphViolation(BaseModel):
    """(S, T) with no extension vertex."""
    model_config = ConfigDict(frozen=True)

    S: Tuple[int, ...]
    T: Tuple[int, ...]


class HypergraphViolation(BaseModel):
    """S and the family T of (t-1)-subsets of S that no vertex realizes."""
    model_config = ConfigDict(frozen=True)

    S: Tuple[int, ...]
    T: Tuple[Tuple[int, ...], ...]


class StructureViolation(BaseModel):
    """Ordered distinct elements and the atomic type with no witness v_0."""
    model_config = ConfigDict(frozen=True)

    elements: Tuple[int, ...]
    atomic_type: AtomicType


Violation = Union[GraphViolation, HypergraphViolation, StructureViolation]


class EAReport(BaseModel):
    """Outcome of an exhaustive extension-axiom check."""
    model_config = ConfigDict(frozen=True)

    holds: bool
    k: int
    violation: Optional[Violation] = None
    work: int = Field(default=0, description="Work units charged against the budget")

    @model_validator(mode="after")
    def _check_consistent(self) -> "EAReport":
        if self.holds != (self.violation is None):
            raise ValueError("holds must be true exactly when no violation is attached")
        return self


# --- entropy classification --------------------------------------------------

class Logic(str, Enum):
    FO = "FO"
    LFP = "LFP"
    LFP_PARITY = "LFPparity"


class Verdict(str, Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"
    IFF_OWF = "IffOWF"


class Classification(BaseModel):
    """Existence verdict for a pseudorandom transduction plus the rule that fired."""
    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    reason: str


CKEntry = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


class CKType(BaseModel):
    """
    (c, k)-type of a tuple: entries (relation index, support S, surjection g)
    with S a sorted subset of 1..c of size <= k and g listed as its image
    sequence (g(1), ..., g(a)).
    """
    model_config = ConfigDict(frozen=True)

    c: int
    k: int
    entries: FrozenSet[CKEntry] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def _check_surjective(self) -> "CKType":
        for _, support, image in self.entries:
            if set(image) != set(support) or len(support) > self.k:
                raise ValueError(f"entry ({support}, {image}) is not a surjection onto its support")
        return self


# --- parity patterns ---------------------------------------------------------

class ParityPattern(BaseModel):
    """
    A set of nonempty subsets of a base set S, each subset written sorted.

    Used for both the common-neighbour reading (C ranges over subsets whose
    union with v has an odd number of common neighbours) and the exclusive
    reading (B ranges over subsets with an odd number of vertices adjacent
    to v and B but to nothing else in S).
    """
    model_config = ConfigDict(frozen=True)

    base_set: Tuple[int, ...]
    pattern: FrozenSet[Tuple[int, ...]] = Field(default_factory=frozenset)

    @field_validator("base_set")
    @classmethod
    def _check_base(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if len(set(value)) != len(value):
            raise ValueError(f"base set has repeated elements: {value}")
        return tuple(sorted(value))

    @model_validator(mode="after")
    def _check_members(self) -> "ParityPattern":
        base = set(self.base_set)
        for member in self.pattern:
            if not member or not set(member) <= base or list(member) != sorted(set(member)):
                raise ValueError(f"{member} is not a sorted nonempty subset of {self.base_set}")
        return self

    @classmethod
    def of(cls, base_set, members) -> "ParityPattern":
        return cls(base_set=tuple(base_set), pattern=frozenset(tuple(sorted(m)) for m in members))

    def sorted_members(self) -> List[Tuple[int, ...]]:
        return sorted(self.pattern, key=lambda m: (len(m), m))


# --- CLI run report ----------------------------------------------------------

class RunReport(BaseModel):
    """
    Machine-readable record of one CLI invocation.

    Randomized commands always record their seed; re-running with it must
    reproduce `outcome`.
    """
    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    outcome: str = ""
    metrics: Dict[str, Any] = Field(default_factory=dict)
    wall_time_s: float = 0.0
    exit_code: int = 0

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.parameters.items():
            lines.append(f"param.{key}: {value}")
        lines.append(f"seed: {self.seed if self.seed is not None else '-'}")
        lines.append(f"outcome: {self.outcome}")
        for key, value in self.metrics.items():
            lines.append(f"metric.{key}: {value}")
        lines.append(f"wall_time_s: {self.wall_time_s:.3f}")
        lines.append(f"exit_code: {self.exit_code}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True) + "\n"


# --- configuration -----------------------------------------------------------

class RadoforgeConfig(BaseModel):
    """
    Project configuration.

    Maps to: radoforge.yaml
    """
    version: str = "1.0"
    budget: int = Field(default=10**10, gt=0, description="Default work budget for exhaustive checks")
    threads: int = Field(default=1, ge=1)
    default_seed: int = Field(default=0, ge=0)
    universal_backend: str = Field(default="greedy", pattern="^(greedy|randomized)$")
    phf_backend: str = Field(default="greedy", pattern="^(greedy|randomized)$")
    max_tries: int = Field(default=64, ge=1)
    batch_size: int = Field(default=8, ge=1, description="Candidates per greedy step")
    confidence: float = Field(default=0.95, gt=0.0, lt=1.0)
    log_dir: Optional[str] = None

