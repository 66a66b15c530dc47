"""
Exhaustive extension-axiom check for relational structures.

For an ordered tuple (v_1..v_k) of distinct elements, a candidate v_0 has
an atomic type whose code has bit e set when the e-th canonical entry
(R, (i_1..i_a)) holds on (v_{i_1}..v_{i_a}). The check fixes v_1..v_{k-1}
and computes codes for every (v_k, v_0) pair at once.
"""

from itertools import permutations
from typing import List, Optional, Sequence

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import PreconditionError
from core.models import AtomicType, EAReport, StructureViolation
from structures.combinatorics import falling_factorial
from structures.relational import RelStructure

from .atomic import atomic_type_entries, atomic_type_from_code, entry_count


def structure_ea_work(n: int, k: int, bits: int) -> int:
    return falling_factorial(n, k) * (1 << bits) * n


def type_codes(A: RelStructure, k: int, prefix: Sequence[int]) -> np.ndarray:
    """
    Codes of every candidate v_0 against (prefix..., b) for every b.

    Returns:
        np.ndarray: int64 array indexed [b, v_0].
    """
    n = A.n
    v_axis = np.arange(n)[None, :]
    b_axis = np.arange(n)[:, None]
    code = np.zeros((n, n), dtype=np.int64)
    for bit, (rel, idx) in enumerate(atomic_type_entries(A.sig, k)):
        index = []
        for i in idx:
            if i == 0:
                index.append(v_axis)
            elif i == k:
                index.append(b_axis)
            else:
                index.append(prefix[i - 1])
        values = np.broadcast_to(A.relations[rel][tuple(index)], (n, n))
        code |= values.astype(np.int64) << bit
    return code


def check_ea_structure(A: RelStructure, k: int, budget: Optional[int] = None) -> EAReport:
    """
    Check EA^sigma_k on A exhaustively.

    Ordered k-tuples are visited lexicographically and types by code, so the
    reported violation is the least (tuple, type) pair.

    Raises:
        PreconditionError: Unless 1 <= k <= n-1.
        BudgetExceededError: If the work exceeds the budget.
    """
    n = A.n
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    bits = entry_count(A.sig, k)
    work = ensure_within_budget(
        f"check_ea_structure(n={n}, k={k}, entries={bits})", structure_ea_work(n, k, bits), budget
    )
    types = 1 << bits
    vertices = np.arange(n)

    for prefix in permutations(range(n), k - 1):
        code = type_codes(A, k, prefix)
        allowed = np.ones(n, dtype=bool)
        allowed[list(prefix)] = False
        usable = allowed[None, :] & (vertices[:, None] != vertices[None, :])
        rows, cols = np.nonzero(usable)
        present = np.zeros((n, types), dtype=bool)
        present[rows, code[rows, cols]] = True

        missing = ~present & allowed[:, None]
        if missing.any():
            b, found = np.unravel_index(int(np.argmax(missing)), missing.shape)
            violation = StructureViolation(
                elements=tuple(prefix) + (int(b),),
                atomic_type=atomic_type_from_code(A.sig, k, int(found)),
            )
            return EAReport(holds=False, k=k, violation=violation, work=work)
    return EAReport(holds=True, k=k, work=work)


def realizes_type(A: RelStructure, elements: Sequence[int], v0: int, atomic_type: AtomicType) -> bool:
    """Direct definition: v0 stands in the given type to elements."""
    w: List[int] = [v0] + list(elements)
    wanted = atomic_type.entries
    for rel, idx in atomic_type_entries(A.sig, atomic_type.k):
        holds = bool(A.relations[rel][tuple(w[i] for i in idx)])
        if holds != ((rel, idx) in wanted):
            return False
    return True


def has_structure_extension(A: RelStructure, elements: Sequence[int], atomic_type: AtomicType) -> bool:
    atomic_type.validate_against(A.sig)
    return any(
        realizes_type(A, elements, v0, atomic_type)
        for v0 in range(A.n)
        if v0 not in elements
    )
