"""
(c, k)-types and the type-counting distinguisher.

The (c,k)-type of distinct elements y_1..y_c records which relation facts
hold on tuples drawn from them with at most k distinct coordinates. Entries
are (relation index, support S, image sequence g) with g a surjection from
the argument positions onto S ⊆ {1..c}. A random tau-structure realizes
every possible type once n is large; a transduction from a signature with
fewer k-ary parts cannot, which gives a first-order distinguisher.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import CapacityError, InternalInconsistencyError, PreconditionError
from core.models import CKEntry, CKType, Signature
from core.prng import Prng
from structures.combinatorics import falling_factorial
from structures.relational import RelStructure
from structures.sampling import sample_random_structure

from .formulas import QFTransduction, apply_qf_transduction
from .orders import surjective_profile

MAX_TYPE_BITS = 62
MAX_DISTINGUISHER_C = 10 ** 6


def ck_type_entries(sig: Signature, c: int, k: int) -> List[CKEntry]:
    """Every possible entry, ordered by relation then image sequence."""
    entries = []
    for i, a in enumerate(sig.arities):
        for image in product(range(1, c + 1), repeat=a):
            support = tuple(sorted(set(image)))
            if len(support) <= k:
                entries.append((i, support, image))
    return entries


def type_count_bound(sig: Signature, c: int, k: int) -> int:
    """
    log2 of the number of (c,k)-types: Σ_{k'=1..k} Σ_i T(a_i,k') C(c,k').
    Compare these exponents directly; 2**exponent is never formed.
    """
    top = min(k, sig.max_arity)
    return sum(surjective_profile(sig, j) * comb(c, j) for j in range(1, top + 1))


def ck_type_of(A: RelStructure, ys: Sequence[int], k: int) -> CKType:
    """
    Raises:
        PreconditionError: If ys repeats an element, leaves the universe, or k > len(ys).
    """
    ys = [int(y) for y in ys]
    c = len(ys)
    if len(set(ys)) != c:
        raise PreconditionError(f"type tuple has repeated elements: {ys}")
    if any(not 0 <= y < A.n for y in ys):
        raise PreconditionError(f"type tuple leaves the universe [0, {A.n})")
    if not 0 <= k <= c:
        raise PreconditionError(f"need 0 <= k <= c, got k={k}, c={c}")
    present = [
        (i, support, image)
        for i, support, image in ck_type_entries(A.sig, c, k)
        if A.relations[i][tuple(ys[g - 1] for g in image)]
    ]
    return CKType(c=c, k=k, entries=frozenset(present))


def _type_from_code(sig: Signature, c: int, k: int, code: int) -> CKType:
    entries = ck_type_entries(sig, c, k)
    return CKType(c=c, k=k, entries=frozenset(e for b, e in enumerate(entries) if code >> b & 1))


def realized_type_codes(B: RelStructure, c: int, k: int, budget: Optional[int] = None) -> np.ndarray:
    """
    Sorted distinct codes of the (c,k)-types realized by ordered distinct
    c-tuples of B; bit b of a code is entry b of ck_type_entries.

    Raises:
        PreconditionError: Unless 1 <= k <= c <= n.
        CapacityError: If a type needs more than MAX_TYPE_BITS entries.
        BudgetExceededError: If (n)_c tuples times the entry count exceed the budget.
    """
    n = B.n
    if not 1 <= k <= c <= n:
        raise PreconditionError(f"need 1 <= k <= c <= n, got k={k}, c={c}, n={n}")
    entries = ck_type_entries(B.sig, c, k)
    if len(entries) > MAX_TYPE_BITS:
        raise CapacityError(f"(c,k)-types with {len(entries)} entries exceed {MAX_TYPE_BITS} bits")
    ensure_within_budget(
        f"realized_type_codes(n={n}, c={c}, k={k})", falling_factorial(n, c) * max(1, len(entries)), budget
    )
    tuples = np.array(list(permutations(range(n), c)), dtype=np.int64).reshape(-1, c)
    codes = np.zeros(tuples.shape[0], dtype=np.int64)
    for bit, (i, _, image) in enumerate(entries):
        held = B.relations[i][tuple(tuples[:, g - 1] for g in image)]
        codes |= held.astype(np.int64) << bit
    return np.unique(codes)


def eval_type_realization(
    B: RelStructure,
    c: int,
    k: int,
    budget: Optional[int] = None,
) -> Tuple[bool, Optional[CKType]]:
    """
    Whether every (c,k)-type over B's signature is realized by some
    ordered distinct c-tuple.

    Returns:
        (all_realized, missing) with missing the type of least code that no
        tuple realizes, or None.
    """
    codes = realized_type_codes(B, c, k, budget)
    total = 1 << len(ck_type_entries(B.sig, c, k))
    if codes.size == total:
        return True, None
    gaps = np.flatnonzero(codes != np.arange(codes.size))
    missing = int(gaps[0]) if gaps.size else int(codes.size)
    return False, _type_from_code(B.sig, c, k, missing)


def find_distinguisher_c(sigma: Signature, tau: Signature, k: int) -> int:
    """
    Least c >= k with fewer (c,k)-types over sigma than over tau.

    Raises:
        PreconditionError: If k does not violate sigma ⪰_S tau.
        InternalInconsistencyError: If no c up to MAX_DISTINGUISHER_C works.
    """
    if k < 1 or surjective_profile(sigma, k) >= surjective_profile(tau, k):
        raise PreconditionError(f"k={k} does not violate the surjective order")
    for c in range(k, MAX_DISTINGUISHER_C + 1):
        if type_count_bound(sigma, c, k) < type_count_bound(tau, c, k):
            return c
    raise InternalInconsistencyError(f"no distinguishing c <= {MAX_DISTINGUISHER_C} for k={k}")


@dataclass(frozen=True)
class DistinguishingEstimate:
    """Realization rates of the all-types sentence on transduced and random structures."""
    c: int
    k: int
    n: int
    trials: int
    transduced_hits: int
    random_hits: int

    @property
    def advantage(self) -> float:
        return abs(self.transduced_hits - self.random_hits) / self.trials

    def as_metrics(self) -> Dict[str, Any]:
        return {
            "c": self.c,
            "k": self.k,
            "n": self.n,
            "trials": self.trials,
            "transduced_realized": self.transduced_hits,
            "random_realized": self.random_hits,
            "advantage": round(self.advantage, 6),
        }


def estimate_distinguishing_advantage(
    theta: QFTransduction,
    c: int,
    k: int,
    n: int,
    trials: int,
    rng: Prng,
    threads: int = 1,
    budget: Optional[int] = None,
) -> DistinguishingEstimate:
    """
    Empirical advantage of "every (c,k)-type is realized" at telling
    theta(A), A uniform over sigma-structures, from uniform tau-structures.

    Trial i draws A from rng.child(2i) and B from rng.child(2i+1).
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")

    def run(i: int) -> Tuple[bool, bool]:
        A = sample_random_structure(theta.source, n, rng.child(2 * i))
        B = sample_random_structure(theta.target, n, rng.child(2 * i + 1))
        image = apply_qf_transduction(theta, A)
        return eval_type_realization(image, c, k, budget)[0], eval_type_realization(B, c, k, budget)[0]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, range(trials)))
    else:
        outcomes = [run(i) for i in range(trials)]
    return DistinguishingEstimate(
        c=c, k=k, n=n, trials=trials,
        transduced_hits=sum(1 for t, _ in outcomes if t),
        random_hits=sum(1 for _, r in outcomes if r),
    )
