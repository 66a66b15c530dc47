"""
Dominating tournaments.

A tournament on m vertices k-dominates when every k-set S has a vertex with
an arc to each member of S. Random tournaments on 2^{3k} vertices do so with
high probability, so the search samples and verifies.
"""

import math
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import ExhaustedTriesError, PreconditionError
from core.prng import Prng
from extension_axioms.graph import first_unextendable
from structures.combinatorics import word_count

MAX_K = 4


@dataclass(frozen=True, eq=False)
class Tournament:
    """orient[i, j] is True when the arc goes i -> j."""
    orient: np.ndarray

    def __post_init__(self):
        orient = np.array(self.orient, dtype=bool)
        if orient.ndim != 2 or orient.shape[0] != orient.shape[1] or orient.shape[0] < 1:
            raise PreconditionError(f"orientation must be a non-empty square matrix, got {orient.shape}")
        off_diagonal = ~np.eye(orient.shape[0], dtype=bool)
        if orient.diagonal().any() or not np.array_equal(orient ^ orient.T, off_diagonal):
            raise PreconditionError("not a tournament: need exactly one arc per pair and no loops")
        orient.setflags(write=False)
        object.__setattr__(self, "orient", orient)

    @property
    def m(self) -> int:
        return self.orient.shape[0]

    @classmethod
    def from_arcs(cls, m: int, arcs: Iterable[Sequence[int]]) -> "Tournament":
        orient = np.zeros((m, m), dtype=bool)
        for i, j in arcs:
            orient[i, j] = True
        return cls(orient)

    @classmethod
    def transitive(cls, m: int) -> "Tournament":
        """Arcs i -> j for every i < j."""
        return cls(np.triu(np.ones((m, m), dtype=bool), 1))

    @classmethod
    def random(cls, m: int, rng: Prng) -> "Tournament":
        """Each pair oriented by a fair coin."""
        rows, cols = np.triu_indices(m, 1)
        forward = rng.fresh().bits(rows.size)
        orient = np.zeros((m, m), dtype=bool)
        orient[rows[forward], cols[forward]] = True
        orient[cols[~forward], rows[~forward]] = True
        return cls(orient)

    def in_degrees(self) -> np.ndarray:
        return self.orient.sum(axis=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tournament):
            return NotImplemented
        return np.array_equal(self.orient, other.orient)

    __hash__ = None


def tournament_work(m: int, k: int) -> int:
    return comb(m, k) * word_count(m)


def first_undominated(T: Tournament, k: int, budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """
    Lexicographically least k-set with no common dominator, or None.

    Raises:
        PreconditionError: Unless 1 <= k <= m-1.
        BudgetExceededError: If C(m,k) word operations exceed the budget.
    """
    m = T.m
    if not 1 <= k <= m - 1:
        raise PreconditionError(f"k must satisfy 1 <= k <= m-1, got k={k}, m={m}")
    ensure_within_budget(f"verify_tournament_domination(m={m}, k={k})", tournament_work(m, k), budget)
    # bank[s, v]: v has an arc to s
    found = first_unextendable([T.orient.T], k)
    return None if found is None else found[0]


def verify_tournament_domination(T: Tournament, k: int, budget: Optional[int] = None) -> bool:
    """True when every k-subset of vertices has a common dominator."""
    return first_undominated(T, k, budget) is None


def find_dominating_tournament(
    k: int,
    rng: Prng,
    max_tries: int = 64,
    budget: Optional[int] = None,
) -> Tournament:
    """
    Random 2^{3k}-vertex tournament verified to k-dominate.

    Attempt i samples from rng.child(i).

    Raises:
        PreconditionError: Unless 1 <= k <= MAX_K.
        ExhaustedTriesError: If max_tries samples all fail verification.
    """
    if not 1 <= k <= MAX_K:
        raise PreconditionError(f"k must satisfy 1 <= k <= {MAX_K}, got {k}")
    m = 1 << (3 * k)
    for attempt in range(max_tries):
        candidate = Tournament.random(m, rng.child(attempt))
        if verify_tournament_domination(candidate, k, budget):
            return candidate
    raise ExhaustedTriesError(f"find_dominating_tournament(k={k})", max_tries)


def tournament_failure_bound(k: int) -> float:
    """Union bound C(m,k) e^{-(m-k)/2^k}, m = 2^{3k}, on a random tournament failing."""
    m = 1 << (3 * k)
    return min(1.0, math.exp(math.log(comb(m, k)) - (m - k) / 2 ** k))
