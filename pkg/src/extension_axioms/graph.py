"""
Exhaustive extension-axiom check for graphs.

For every k-set S (lexicographic) and every T subset of S the checker counts
the vertices adjacent to all of T and to nothing in S minus T. Counting is
batched: a (k-1)-prefix of S fixes a boolean weight row per choice word, and
one matrix product against the adjacency (or its complement) yields the
counts for every possible last element at once.
"""

from math import comb
from typing import Optional, Sequence, Tuple

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import PreconditionError
from core.models import EAReport, GraphViolation
from structures.combinatorics import combinations_array, word_count
from structures.graphs import Graph

ROW_BLOCK = 1024


def first_unextendable(banks: Sequence[np.ndarray], k: int) -> Optional[Tuple[Tuple[int, ...], int]]:
    """
    Least (S, word) such that no vertex v satisfies banks[word_i][S[i], v] for all i.

    Args:
        banks: B boolean n x n matrices with False diagonals; banks[c][s, v]
            says v is acceptable for a position holding s under choice c.
        k: Size of S.

    Returns:
        (S, word) with S sorted and word = sum of choice_i * B**i, ordered by
        S lexicographically and then by word; None if every pair extends.
    """
    n = banks[0].shape[0]
    choices = len(banks)
    banks_t = [np.ascontiguousarray(b.T, dtype=np.float32) for b in banks]

    prefixes = combinations_array(n, k - 1)
    words = choices ** (k - 1)
    digits = (np.arange(words)[:, None] // choices ** np.arange(k - 1)) % choices
    block = max(1, ROW_BLOCK // words)
    columns = np.arange(n)

    for start in range(0, prefixes.shape[0], block):
        pre = prefixes[start:start + block]
        p = pre.shape[0]
        weights = np.ones((p, words, n), dtype=bool)
        for i in range(k - 1):
            for c in range(choices):
                sel = digits[:, i] == c
                if sel.any():
                    weights[:, sel, :] &= banks[c][pre[:, i]][:, None, :]
        flat = weights.reshape(p * words, n).astype(np.float32)
        counts = np.stack([flat @ bt for bt in banks_t], axis=1).reshape(p, words, choices, n)

        last = pre[:, -1] if k > 1 else np.full(p, -1)
        failing = (counts == 0) & (columns[None, :] > last[:, None])[:, None, None, :]
        if failing.any():
            ordered = failing.transpose(0, 3, 2, 1)
            row, b, c, w = np.unravel_index(int(np.argmax(ordered)), ordered.shape)
            S = tuple(int(x) for x in pre[row]) + (int(b),)
            return S, int(c) * words + int(w)
    return None


def graph_ea_work(n: int, k: int) -> int:
    return comb(n, k) * (1 << k) * word_count(n)


def check_ea_graph(G: Graph, k: int, budget: Optional[int] = None) -> EAReport:
    """
    Check EA_k on G exhaustively.

    Args:
        G: Graph to check.
        k: Axiom size, 1 <= k <= n-1.
        budget: Work budget; defaults to the configured one.

    Returns:
        EAReport: holds, or the lexicographically least failing (S, T).

    Raises:
        PreconditionError: If k is out of range.
        BudgetExceededError: If the work exceeds the budget.
    """
    n = G.n
    if not 1 <= k <= n - 1:
        raise PreconditionError(f"k must satisfy 1 <= k <= n-1, got k={k}, n={n}")
    work = ensure_within_budget(f"check_ea_graph(n={n}, k={k})", graph_ea_work(n, k), budget)

    adjacent = G.adjacency
    non_adjacent = ~adjacent
    np.fill_diagonal(non_adjacent, False)
    found = first_unextendable([non_adjacent, adjacent], k)
    if found is None:
        return EAReport(holds=True, k=k, work=work)
    S, word = found
    T = tuple(s for i, s in enumerate(S) if word >> i & 1)
    return EAReport(holds=False, k=k, violation=GraphViolation(S=S, T=T), work=work)


def has_graph_extension(G: Graph, S: Sequence[int], T: Sequence[int]) -> bool:
    """Direct definition: some v outside S adjacent to exactly T within S."""
    S = list(S)
    inside = set(T)
    for v in range(G.n):
        if v in S:
            continue
        if all(bool(G.adjacency[v, s]) == (s in inside) for s in S):
            return True
    return False
