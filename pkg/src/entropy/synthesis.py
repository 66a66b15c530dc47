"""
Synthesis of exactly uniform quantifier-free transductions.

A target relation of arity a, restricted to tuples whose equality pattern
has k classes, is a "k-ary part"; there are S(a,k) such parts per relation.
When sigma ⪰_S tau every k admits an injection from tau's k-ary parts into
sigma's, and routing each target part to its image (first occurrence of
each class feeding the matching class of the source pattern) copies
independent uniform bits one-to-one.

Parts are enumerated by increasing k, relation declaration order and then
restricted growth string order; the injection is first-fit.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.errors import OrderViolationError
from core.models import Signature
from structures.combinatorics import rgs_by_class_count
from structures.sampling import enumerate_structures, structure_cell_count, structure_codes

from .formulas import And, Atom, Eq, Formula, Neq, Or, QFTransduction
from .orders import geq_surj

Part = Tuple[int, Tuple[int, ...]]


def _parts(sig: Signature, k: int) -> List[Part]:
    out = []
    for i, a in enumerate(sig.arities):
        out.extend((i, rgs) for rgs in rgs_by_class_count(a).get(k, []))
    return out


def _guard(pattern: Tuple[int, ...]) -> List[Formula]:
    """Equalities and disequalities that hold exactly on tuples with this pattern."""
    first: Dict[int, int] = {}
    guards: List[Formula] = []
    for pos, cls in enumerate(pattern):
        if cls in first:
            guards.append(Eq(first[cls], pos))
        else:
            guards.extend(Neq(earlier, pos) for earlier in first.values())
            first[cls] = pos
    return guards


def _routed_atom(source: Signature, part: Part, target_pattern: Tuple[int, ...]) -> Atom:
    first: Dict[int, int] = {}
    for pos, cls in enumerate(target_pattern):
        first.setdefault(cls, pos)
    i, source_pattern = part
    return Atom(source.names[i], tuple(first[c] for c in source_pattern))


def build_statistical_transduction(sigma: Signature, tau: Signature) -> QFTransduction:
    """
    Quantifier-free transduction taking uniform sigma-structures to exactly
    uniform tau-structures, for every universe size.

    Raises:
        OrderViolationError: If sigma ⪰_S tau fails; carries the least violating k.
    """
    holds, violating = geq_surj(sigma, tau)
    if not holds:
        raise OrderViolationError(
            f"[{sigma.to_inline()}] does not dominate [{tau.to_inline()}] in the surjective order",
            violating,
        )

    assigned: Dict[Part, Part] = {}
    for k in range(1, tau.max_arity + 1):
        available = _parts(sigma, k)
        for slot, target_part in enumerate(_parts(tau, k)):
            assigned[target_part] = available[slot]

    formulas = []
    for j, a in enumerate(tau.arities):
        branches = []
        for k, patterns in sorted(rgs_by_class_count(a).items()):
            for pattern in patterns:
                atom = _routed_atom(sigma, assigned[(j, pattern)], pattern)
                guards = _guard(pattern)
                branches.append(And(tuple(guards) + (atom,)) if guards else atom)
        formulas.append(branches[0] if len(branches) == 1 else Or(tuple(branches)))
    return QFTransduction(sigma, tau, tuple(formulas))


@dataclass(frozen=True)
class UniformityReport:
    """Histogram summary of a transduction applied to every source structure."""
    n: int
    inputs: int
    outputs: int
    distinct_hit: int
    min_count: int
    max_count: int
    expected_count: Optional[int]

    @property
    def exactly_uniform(self) -> bool:
        return (
            self.expected_count is not None
            and self.distinct_hit == self.outputs
            and self.min_count == self.max_count == self.expected_count
        )

    def as_metrics(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "distinct_hit": self.distinct_hit,
            "min_count": self.min_count,
            "max_count": self.max_count,
            "expected_count": self.expected_count,
            "exactly_uniform": self.exactly_uniform,
        }


def transduction_multiplicities(theta: QFTransduction, n: int) -> Counter:
    """
    How often each target structure code arises over all source structures
    on n elements. Codes follow structures.sampling.structure_codes.

    Raises:
        PreconditionError: If the source has too many cells to enumerate.
    """
    batches = enumerate_structures(theta.source, n)
    images = theta.evaluate(batches, n, batched=True)
    codes = structure_codes(images)
    values, counts = np.unique(codes, return_counts=True)
    return Counter(dict(zip(values.tolist(), counts.tolist())))


def check_uniformity(theta: QFTransduction, n: int) -> UniformityReport:
    histogram = transduction_multiplicities(theta, n)
    source_cells = structure_cell_count(theta.source, n)
    target_cells = structure_cell_count(theta.target, n)
    surplus = source_cells - target_cells
    return UniformityReport(
        n=n,
        inputs=1 << source_cells,
        outputs=1 << target_cells,
        distinct_hit=len(histogram),
        min_count=min(histogram.values()),
        max_count=max(histogram.values()),
        expected_count=(1 << surplus) if surplus >= 0 else None,
    )
