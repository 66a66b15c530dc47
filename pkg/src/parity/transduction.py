"""
Parity transduction from graphs to t-uniform hypergraphs.

{v_1, ..., v_t} becomes a hyperedge when the number of vertices adjacent
to every v_i is odd. Counting runs per (t-2)-prefix as one matrix product
over the remaining vertices.
"""

from concurrent.futures import ThreadPoolExecutor
from math import comb
from typing import Iterable, Optional

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import InvalidArityError, PreconditionError
from structures.combinatorics import combinations_array, word_count
from structures.graphs import Graph, Hypergraph, candidate_edge_count


def parity_transduction_work(n: int, t: int) -> int:
    return comb(n, t - 2) * n * word_count(n)


def common_neighbor_parity(G: Graph, vs: Iterable[int]) -> int:
    """Parity of the number of vertices adjacent to every member of vs."""
    vs = [int(v) for v in vs]
    if not vs or len(set(vs)) != len(vs):
        raise PreconditionError(f"need a nonempty set of distinct vertices, got {vs}")
    if min(vs) < 0 or max(vs) >= G.n:
        raise PreconditionError(f"vertex outside [0, {G.n})")
    common = np.logical_and.reduce(G.adjacency[vs], axis=0)
    return int(common.sum()) & 1


def _edges_for_prefix(G: Graph, adj: np.ndarray, prefix: np.ndarray, t: int) -> np.ndarray:
    n = G.n
    common = np.logical_and.reduce(G.adjacency[prefix], axis=0) if prefix.size else np.ones(n, dtype=bool)
    start = int(prefix[-1]) + 1 if prefix.size else 0
    rows = adj[start:]
    counts = (rows * common.astype(np.float32)) @ rows.T
    odd = np.triu((counts.astype(np.int64) & 1).astype(bool), 1)
    i, j = np.nonzero(odd)
    out = np.empty((i.size, t), dtype=np.int64)
    out[:, :t - 2] = prefix
    out[:, t - 2] = i + start
    out[:, t - 1] = j + start
    return out


def apply_parity_transduction(
    G: Graph,
    t: int,
    budget: Optional[int] = None,
    threads: int = 1,
) -> Hypergraph:
    """
    The t-hypergraph whose edges are the t-sets with an odd number of
    common neighbours in G.

    Args:
        G: Source graph.
        t: Edge arity, 2 <= t <= n.
        budget: Work budget override.
        threads: Prefix batches handled concurrently; output does not depend on it.

    Raises:
        InvalidArityError: Unless 2 <= t <= n.
        BudgetExceededError: If C(n,t-2) row products exceed the budget.
    """
    n = G.n
    if not 2 <= t <= n:
        raise InvalidArityError(f"edge arity t={t} must satisfy 2 <= t <= n={n}")
    candidate_edge_count(n, t)
    ensure_within_budget(f"apply_parity_transduction(n={n}, t={t})", parity_transduction_work(n, t), budget)

    adj = G.adjacency.astype(np.float32)
    prefixes = [p for p in combinations_array(n, t - 2) if not p.size or p[-1] <= n - 3]

    def run(prefix: np.ndarray) -> np.ndarray:
        return _edges_for_prefix(G, adj, prefix, t)

    if threads > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, prefixes))
    else:
        chunks = [run(p) for p in prefixes]
    edges = np.concatenate(chunks) if chunks else np.zeros((0, t), dtype=np.int64)
    return Hypergraph(n, t, edges)
