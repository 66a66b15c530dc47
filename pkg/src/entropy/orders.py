"""
Entropy orders on relational signatures.

Both orders compare how many independent random bits a signature carries.
The lexicographic order ⪰_L compares arity multisets; the surjective order
⪰_S compares, for every k, how many k-ary "parts" the relations provide,
counted by the number T(a, k) of surjections from an a-set onto a k-set.
T(a, k) vanishes for k > a, so only k up to the largest arity matters.
"""

from math import comb
from typing import Optional, Tuple

from core.errors import CapacityError, InternalInconsistencyError, PreconditionError
from core.models import Signature

ARITHMETIC_CAP = 12


def _check_caps(a: int, k: int):
    if a < 1 or k < 0:
        raise PreconditionError(f"need a >= 1 and k >= 0, got a={a}, k={k}")
    if a > ARITHMETIC_CAP or k > ARITHMETIC_CAP:
        raise CapacityError(f"surjection counts are capped at a, k <= {ARITHMETIC_CAP}")


def surjection_count(a: int, k: int) -> int:
    """
    Number of surjections from an a-set onto a k-set, by inclusion-exclusion.

    Raises:
        PreconditionError: If a < 1 or k < 0.
        CapacityError: If a or k exceeds ARITHMETIC_CAP.
    """
    _check_caps(a, k)
    return sum((-1) ** (k - j) * j ** a * comb(k, j) for j in range(k + 1))


def stirling2(a: int, k: int) -> int:
    """Stirling number of the second kind, by S(a,k) = k S(a-1,k) + S(a-1,k-1)."""
    if a < 0 or k < 0:
        raise PreconditionError(f"need a, k >= 0, got a={a}, k={k}")
    if k > a:
        return 0
    table = [[0] * (k + 1) for _ in range(a + 1)]
    table[0][0] = 1
    for i in range(1, a + 1):
        for j in range(1, min(i, k) + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[a][k]


def _lex_by_sum(sigma: Signature, tau: Signature) -> bool:
    base = len(sigma) + len(tau)
    return sum(base ** a for a in sigma.arities) >= sum(base ** a for a in tau.arities)


def _lex_by_tuple(sigma: Signature, tau: Signature) -> bool:
    return tuple(sorted(sigma.arities, reverse=True)) >= tuple(sorted(tau.arities, reverse=True))


def geq_lex(sigma: Signature, tau: Signature) -> bool:
    """
    sigma ⪰_L tau.

    Evaluated twice, as a positional sum in base |sigma| + |tau| and as a
    comparison of descending arity tuples.

    Raises:
        InternalInconsistencyError: If the two evaluations disagree.
    """
    by_sum = _lex_by_sum(sigma, tau)
    by_tuple = _lex_by_tuple(sigma, tau)
    if by_sum != by_tuple:
        raise InternalInconsistencyError(
            f"lexicographic order disagrees for [{sigma.to_inline()}] vs [{tau.to_inline()}]"
        )
    return by_sum


def surjective_profile(sig: Signature, k: int) -> int:
    """Σ_i T(a_i, k): the number of k-ary parts the signature provides."""
    return sum(surjection_count(a, k) for a in sig.arities)


def geq_surj(sigma: Signature, tau: Signature) -> Tuple[bool, Optional[int]]:
    """
    sigma ⪰_S tau.

    Returns:
        (holds, violating_k) with violating_k the least k whose profile of
        sigma falls short of tau's, or None when the order holds.
    """
    top = max(sigma.max_arity, tau.max_arity)
    for k in range(1, top + 1):
        if surjective_profile(sigma, k) < surjective_profile(tau, k):
            return False, k
    return True, None
