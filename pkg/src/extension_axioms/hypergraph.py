"""
Exhaustive extension-axiom check for t-uniform hypergraphs.

For a k-set S the (t-1)-subsets of S are numbered in lexicographic order of
their positions; a vertex v outside S realizes the family whose bit q is set
when subset q together with v is a hyperedge. S passes when every family is
realized.
"""

from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import PreconditionError
from core.models import EAReport, HypergraphViolation
from structures.combinatorics import combinations_array
from structures.graphs import Hypergraph


def hypergraph_ea_work(n: int, k: int, t: int) -> int:
    q = comb(k, t - 1)
    return comb(n, k) * (1 << q) * n * q


def check_ea_hypergraph(H: Hypergraph, k: int, budget: Optional[int] = None) -> EAReport:
    """
    Check EA^t_k on H exhaustively.

    Returns the lexicographically least failing S and, for it, the family
    with the smallest code.

    Raises:
        PreconditionError: Unless t-1 <= k <= n-1.
        BudgetExceededError: If the work exceeds the budget.
    """
    n, t = H.n, H.t
    if not t - 1 <= k <= n - 1:
        raise PreconditionError(f"k must satisfy t-1 <= k <= n-1, got k={k}, t={t}, n={n}")
    work = ensure_within_budget(
        f"check_ea_hypergraph(n={n}, t={t}, k={k})", hypergraph_ea_work(n, k, t), budget
    )

    ind = H.indicator
    subsets = list(combinations(range(k), t - 1))
    families = 1 << len(subsets)
    vertices = np.arange(n)

    for prefix in combinations_array(n, k - 1):
        prefix = [int(x) for x in prefix]
        last = prefix[-1] if prefix else -1
        code = np.zeros((n, n), dtype=np.int64)
        for q, positions in enumerate(subsets):
            if k - 1 in positions:
                fixed = tuple(prefix[p] for p in positions if p != k - 1)
                bit = ind[fixed]
            else:
                fixed = tuple(prefix[p] for p in positions)
                bit = np.broadcast_to(ind[fixed][None, :], (n, n))
            code |= bit.astype(np.int64) << q

        allowed = np.ones(n, dtype=bool)
        allowed[prefix] = False
        usable = allowed[None, :] & (vertices[:, None] != vertices[None, :])
        rows, cols = np.nonzero(usable)
        present = np.zeros((n, families), dtype=bool)
        present[rows, code[rows, cols]] = True

        candidates = (vertices > last) & allowed
        missing = ~present & candidates[:, None]
        if missing.any():
            b, fam = np.unravel_index(int(np.argmax(missing)), missing.shape)
            S = tuple(prefix) + (int(b),)
            T = tuple(tuple(S[p] for p in subsets[q]) for q in range(len(subsets)) if fam >> q & 1)
            return EAReport(holds=False, k=k, violation=HypergraphViolation(S=S, T=T), work=work)
    return EAReport(holds=True, k=k, work=work)


def has_hypergraph_extension(H: Hypergraph, S, T) -> bool:
    """Direct definition: some v outside S whose links into S are exactly T."""
    S = list(S)
    wanted = {tuple(sorted(q)) for q in T}
    for v in range(H.n):
        if v in S:
            continue
        if all(H.has_edge(list(q) + [v]) == (tuple(sorted(q)) in wanted) for q in combinations(S, H.t - 1)):
            return True
    return False
