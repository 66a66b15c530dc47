"""
(n,k)-universal sets and (n,k)-perfect hash families.

Both are built by one of two backends and always verified before use:

    greedy      add the best of a batch of sampled candidates until every
                constraint is covered; once few constraints remain,
                candidates are repaired to cover as many of them as a
                consistent assignment allows
    randomized  sample a family of the textbook size, verify, resample
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import ExhaustedTriesError, PreconditionError
from core.prng import Prng
from structures.combinatorics import combinations_array

MAX_K = 4
BACKENDS = ("greedy", "randomized")
REPAIR_FACTOR = 4
CHUNK_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class UniversalSet:
    """Family of subsets of 0..n-1; row r of `sets` is the indicator of member r."""
    n: int
    k: int
    sets: np.ndarray

    def __post_init__(self):
        sets = np.array(self.sets, dtype=bool).reshape(-1, self.n)
        sets.setflags(write=False)
        object.__setattr__(self, "sets", sets)

    @property
    def size(self) -> int:
        return self.sets.shape[0]

    def members(self) -> List[Tuple[int, ...]]:
        return [tuple(int(x) for x in np.flatnonzero(row)) for row in self.sets]


@dataclass(frozen=True, eq=False)
class PerfectHashFamily:
    """Functions 0..n-1 -> 1..k; row r of `funcs` lists the values of function r."""
    n: int
    k: int
    funcs: np.ndarray

    def __post_init__(self):
        funcs = np.array(self.funcs, dtype=np.int8).reshape(-1, self.n)
        if funcs.size and (funcs.min() < 1 or funcs.max() > self.k):
            raise PreconditionError(f"hash values must lie in 1..{self.k}")
        funcs.setflags(write=False)
        object.__setattr__(self, "funcs", funcs)

    @property
    def size(self) -> int:
        return self.funcs.shape[0]


def _check_params(n: int, k: int, min_n: int, what: str):
    if not 1 <= k <= MAX_K:
        raise PreconditionError(f"k must satisfy 1 <= k <= {MAX_K}, got {k}")
    if n < min_n:
        raise PreconditionError(f"{what} needs n >= {min_n}, got n={n}, k={k}")


def _check_backend(backend: str):
    if backend not in BACKENDS:
        raise PreconditionError(f"backend must be one of {BACKENDS}, got {backend!r}")


# --- coverage ----------------------------------------------------------------

def trace_codes(sets: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """codes[r, i] = sum_j sets[r, combos[i, j]] << j."""
    codes = np.zeros((sets.shape[0], combos.shape[0]), dtype=np.uint8)
    for j in range(combos.shape[1]):
        codes |= sets[:, combos[:, j]].astype(np.uint8) << j
    return codes


def perfect_on(funcs: np.ndarray, combos: np.ndarray) -> np.ndarray:
    """perfect[r, i]: function r maps k-set i onto 1..k."""
    seen = np.zeros((funcs.shape[0], combos.shape[0]), dtype=np.int16)
    for j in range(combos.shape[1]):
        seen |= np.left_shift(np.int16(1), funcs[:, combos[:, j]].astype(np.int16) - 1)
    return seen == (1 << combos.shape[1]) - 1


def _chunks(n: int, k: int, rows: int):
    combos = combinations_array(n, k)
    step = max(1, CHUNK_CELLS // max(1, rows))
    for start in range(0, combos.shape[0], step):
        yield combos[start:start + step]


def first_uncovered_universal(
    U: UniversalSet, budget: Optional[int] = None
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Least k-set S, with its least missing trace, that U does not shatter; None if U is universal."""
    n, k = U.n, U.k
    ensure_within_budget(f"verify_universal_set(n={n}, k={k})", comb(n, k) * max(1, U.size), budget)
    for combos in _chunks(n, k, U.size):
        seen = np.zeros((combos.shape[0], 1 << k), dtype=bool)
        if U.size:
            seen[np.arange(combos.shape[0])[None, :], trace_codes(U.sets, combos)] = True
        if not seen.all():
            row, code = np.unravel_index(int(np.argmax(~seen)), seen.shape)
            S = tuple(int(x) for x in combos[row])
            return S, tuple(s for j, s in enumerate(S) if code >> j & 1)
    return None


def first_uncovered_phf(F: PerfectHashFamily, budget: Optional[int] = None) -> Optional[Tuple[int, ...]]:
    """Least k-set that no function of F maps onto 1..k, or None."""
    n, k = F.n, F.k
    ensure_within_budget(f"verify_phf(n={n}, k={k})", comb(n, k) * max(1, F.size), budget)
    for combos in _chunks(n, k, F.size):
        if F.size:
            covered = perfect_on(F.funcs, combos).any(axis=0)
        else:
            covered = np.zeros(combos.shape[0], dtype=bool)
        if not covered.all():
            return tuple(int(x) for x in combos[int(np.argmin(covered))])
    return None


def _random_ksets(n: int, k: int, trials: int, gen: np.random.Generator) -> np.ndarray:
    return np.array([np.sort(gen.choice(n, k, replace=False)) for _ in range(trials)], dtype=np.int64)


def verify_universal_set(
    U: UniversalSet,
    mode: str = "exhaustive",
    trials: int = 10_000,
    rng: Optional[Prng] = None,
    budget: Optional[int] = None,
) -> bool:
    """
    Check that every k-set sees all 2^k traces.

    Args:
        U: Family to check.
        mode: "exhaustive" (exact) or "sampled" (`trials` random (S, trace) checks).
        trials: Number of random checks in sampled mode.
        rng: Randomness for sampled mode.
        budget: Work budget in exhaustive mode.
    """
    if mode == "exhaustive":
        return first_uncovered_universal(U, budget) is None
    if mode != "sampled":
        raise PreconditionError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if U.size == 0:
        return False
    gen = (rng or Prng()).fresh().generator
    combos = _random_ksets(U.n, U.k, trials, gen)
    wanted = gen.integers(0, 1 << U.k, size=trials)
    return bool((trace_codes(U.sets, combos) == wanted[None, :]).any(axis=0).all())


def verify_phf(
    F: PerfectHashFamily,
    mode: str = "exhaustive",
    trials: int = 10_000,
    rng: Optional[Prng] = None,
    budget: Optional[int] = None,
) -> bool:
    """Check that every k-set is mapped onto 1..k by some function."""
    if mode == "exhaustive":
        return first_uncovered_phf(F, budget) is None
    if mode != "sampled":
        raise PreconditionError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if F.size == 0:
        return False
    combos = _random_ksets(F.n, F.k, trials, (rng or Prng()).fresh().generator)
    return bool(perfect_on(F.funcs, combos).any(axis=0).all())


# --- greedy backend ------------------------------------------------------------

class _CoverProblem(ABC):
    """
    One greedy set-cover instance over the k-subsets of 0..n-1.

    `uncovered` has one row per still-open k-set; subclasses decide what a
    row holds and what a candidate covers.
    """

    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self.combos = combinations_array(n, k).astype(np.int32)

    def pending(self) -> int:
        return int(self.uncovered.sum())

    def compact(self):
        alive = self.uncovered.reshape(self.uncovered.shape[0], -1).any(axis=1)
        self.combos = self.combos[alive]
        self.uncovered = self.uncovered[alive]

    @abstractmethod
    def sample(self, gen: np.random.Generator) -> np.ndarray:
        """Random candidate for the next round."""
        pass

    @abstractmethod
    def repair(self, gen: np.random.Generator) -> np.ndarray:
        """Candidate built to cover the first open row."""
        pass

    @abstractmethod
    def hits(self, candidate: np.ndarray) -> np.ndarray:
        """Mask of the open cells the candidate covers."""
        pass

    @abstractmethod
    def gain(self, hits: np.ndarray) -> int:
        pass

    @abstractmethod
    def apply(self, hits: np.ndarray):
        pass


class _UniversalCover(_CoverProblem):
    """Rows are k-sets, columns the 2^k traces still missing."""

    def __init__(self, n: int, k: int):
        super().__init__(n, k)
        self.uncovered = np.ones((self.combos.shape[0], 1 << k), dtype=bool)

    def sample(self, gen):
        return gen.random(self.n) < 0.5

    def repair(self, gen):
        values = (gen.random(self.n) < 0.5).tolist()
        locked = [False] * self.n
        rows, codes = np.nonzero(self.uncovered)
        for i in gen.permutation(rows.size).tolist():
            S = self.combos[rows[i]].tolist()
            want = [bool(int(codes[i]) >> j & 1) for j in range(self.k)]
            if all(not locked[s] or values[s] == w for s, w in zip(S, want)):
                for s, w in zip(S, want):
                    values[s] = w
                    locked[s] = True
        return np.array(values, dtype=bool)

    def hits(self, candidate):
        return trace_codes(candidate[None, :], self.combos)[0]

    def gain(self, hits):
        return int(self.uncovered[np.arange(hits.size), hits].sum())

    def apply(self, hits):
        self.uncovered[np.arange(hits.size), hits] = False


class _HashCover(_CoverProblem):
    """Rows are k-sets not yet mapped onto 1..k."""

    def __init__(self, n: int, k: int):
        super().__init__(n, k)
        self.uncovered = np.ones(self.combos.shape[0], dtype=bool)

    def sample(self, gen):
        return gen.integers(1, self.k + 1, size=self.n).astype(np.int8)

    def repair(self, gen):
        values = gen.integers(1, self.k + 1, size=self.n).tolist()
        locked = [False] * self.n
        rows = np.flatnonzero(self.uncovered)
        for i in gen.permutation(rows.size).tolist():
            S = self.combos[rows[i]].tolist()
            fixed = [values[s] for s in S if locked[s]]
            if len(set(fixed)) != len(fixed):
                continue
            free = [v for v in range(1, self.k + 1) if v not in fixed]
            gen.shuffle(free)
            for s in S:
                if not locked[s]:
                    values[s] = free.pop()
                    locked[s] = True
        return np.array(values, dtype=np.int8)

    def hits(self, candidate):
        return perfect_on(candidate[None, :], self.combos)[0]

    def gain(self, hits):
        return int((self.uncovered & hits).sum())

    def apply(self, hits):
        self.uncovered &= ~hits


def _greedy(problem: _CoverProblem, rng: Prng, batch_size: int, max_tries: int, what: str) -> List[np.ndarray]:
    gen = rng.fresh().generator
    chosen: List[np.ndarray] = []
    stalls = 0
    while problem.combos.shape[0]:
        if problem.pending() <= REPAIR_FACTOR * problem.n:
            candidates = [problem.repair(gen) for _ in range(batch_size)]
        else:
            candidates = [problem.sample(gen) for _ in range(batch_size)]
        hits = [problem.hits(c) for c in candidates]
        gains = [problem.gain(h) for h in hits]
        best = int(np.argmax(gains))
        if gains[best] == 0:
            stalls += 1
            if stalls >= max_tries:
                raise ExhaustedTriesError(what, max_tries)
            continue
        stalls = 0
        chosen.append(candidates[best])
        problem.apply(hits[best])
        problem.compact()
    return chosen


def build_universal_set(
    n: int,
    k: int,
    backend: str = "greedy",
    rng: Optional[Prng] = None,
    batch_size: int = 8,
    max_tries: int = 64,
    budget: Optional[int] = None,
) -> UniversalSet:
    """
    Verified (n,k)-universal set.

    Raises:
        PreconditionError: Unless 1 <= k <= 4 and n >= 2k, or on an unknown backend.
        ExhaustedTriesError: If the backend cannot produce a verified family.
        BudgetExceededError: If verification exceeds the budget.
    """
    _check_params(n, k, 2 * k, "a universal set")
    _check_backend(backend)
    rng = rng or Prng()
    what = f"build_universal_set(n={n}, k={k}, backend={backend})"

    if backend == "randomized":
        size = math.ceil(2 ** k * (k * math.log(n) + k * math.log(2) + 3))
        for attempt in range(max_tries):
            U = UniversalSet(n, k, rng.child(attempt).bits((size, n)))
            if verify_universal_set(U, budget=budget):
                return U
        raise ExhaustedTriesError(what, max_tries)

    chosen = _greedy(_UniversalCover(n, k), rng, batch_size, max_tries, what)
    U = UniversalSet(n, k, np.array(chosen, dtype=bool).reshape(-1, n))
    if not verify_universal_set(U, budget=budget):
        raise ExhaustedTriesError(what, max_tries)
    return U


def build_perfect_hash_family(
    n: int,
    k: int,
    backend: str = "greedy",
    rng: Optional[Prng] = None,
    batch_size: int = 8,
    max_tries: int = 64,
    budget: Optional[int] = None,
) -> PerfectHashFamily:
    """
    Verified (n,k)-perfect hash family.

    Raises:
        PreconditionError: Unless 1 <= k <= 4 and n >= k, or on an unknown backend.
        ExhaustedTriesError: If the backend cannot produce a verified family.
        BudgetExceededError: If verification exceeds the budget.
    """
    _check_params(n, k, k, "a perfect hash family")
    _check_backend(backend)
    rng = rng or Prng()
    what = f"build_perfect_hash_family(n={n}, k={k}, backend={backend})"

    if backend == "randomized":
        size = math.ceil(math.e ** k * (k * math.log(n) + 3))
        for attempt in range(max_tries):
            gen = rng.child(attempt).generator
            F = PerfectHashFamily(n, k, gen.integers(1, k + 1, size=(size, n)))
            if verify_phf(F, budget=budget):
                return F
        raise ExhaustedTriesError(what, max_tries)

    chosen = _greedy(_HashCover(n, k), rng, batch_size, max_tries, what)
    F = PerfectHashFamily(n, k, np.array(chosen, dtype=np.int8).reshape(-1, n))
    if not verify_phf(F, budget=budget):
        raise ExhaustedTriesError(what, max_tries)
    return F
