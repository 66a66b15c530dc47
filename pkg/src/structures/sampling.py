"""
Uniform samplers and exhaustive enumeration of small structures.

Every sampler draws from a rewound copy of the Prng it is given, so its
output is a pure function of (inputs, seed, stream). Use `rng.child(i)` for
independent draws.
"""

from typing import Iterator, List, Tuple

import numpy as np

from core.errors import InvalidArityError, PreconditionError
from core.models import Signature
from core.prng import Prng

from .combinatorics import combinations_array
from .graphs import Graph, Hypergraph, candidate_edge_count
from .relational import RelStructure, check_capacity

ENUMERATION_CELL_CAP = 24


def sample_random_structure(sig: Signature, n: int, rng: Prng) -> RelStructure:
    """Each of the sum n^a_i candidate tuples present independently with probability 1/2."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    for symbol in sig.relations:
        check_capacity(n, symbol.arity, symbol.name)
    source = rng.fresh()
    return RelStructure(sig, n, tuple(source.bits((n,) * a) for a in sig.arities))


def sample_random_graph(n: int, rng: Prng) -> Graph:
    """G(n, 1/2)."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    check_capacity(n, 2, "adjacency")
    rows, cols = np.triu_indices(n, 1)
    present = rng.fresh().bits(rows.size)
    adj = np.zeros((n, n), dtype=bool)
    adj[rows[present], cols[present]] = True
    adj |= adj.T
    return Graph(adj)


def sample_random_hypergraph(n: int, t: int, rng: Prng) -> Hypergraph:
    """
    G_t(n, 1/2).

    Raises:
        InvalidArityError: If t < 2 or t > n.
    """
    if t < 2 or t > n:
        raise InvalidArityError(f"edge arity t={t} must satisfy 2 <= t <= n={n}")
    count = candidate_edge_count(n, t)
    present = rng.fresh().bits(count)
    return Hypergraph(n, t, combinations_array(n, t)[present])


def structure_cell_count(sig: Signature, n: int) -> int:
    return sum(n ** a for a in sig.arities)


def enumerate_structures(sig: Signature, n: int) -> Tuple[np.ndarray, ...]:
    """
    Every sigma-structure on n elements, as one batched array per relation.

    Structure s has cell j (cells numbered relation by relation, each in
    C order) present iff bit j of s is set, so batch index s equals
    `structure_codes(...)[s]`.

    Returns:
        Tuple of arrays with shapes (2^N, n, ..., n), N = total cell count.

    Raises:
        PreconditionError: If N exceeds ENUMERATION_CELL_CAP.
    """
    total = structure_cell_count(sig, n)
    if total > ENUMERATION_CELL_CAP:
        raise PreconditionError(
            f"exhaustive enumeration over {total} cells exceeds the cap of {ENUMERATION_CELL_CAP}"
        )
    codes = np.arange(1 << total, dtype=np.int64)[:, None]
    bits = ((codes >> np.arange(total, dtype=np.int64)) & 1).astype(bool)
    batches: List[np.ndarray] = []
    offset = 0
    for a in sig.arities:
        cells = n ** a
        batches.append(bits[:, offset:offset + cells].reshape((-1,) + (n,) * a))
        offset += cells
    return tuple(batches)


def structure_codes(batches: Tuple[np.ndarray, ...]) -> np.ndarray:
    """Inverse of enumerate_structures: the integer code of each batched structure."""
    if not batches:
        return np.zeros(1, dtype=np.int64)
    count = batches[0].shape[0]
    flat = np.concatenate([b.reshape(count, -1) for b in batches], axis=1)
    if flat.shape[1] > 62:
        raise PreconditionError("too many cells to encode as one integer")
    weights = np.left_shift(np.int64(1), np.arange(flat.shape[1], dtype=np.int64))
    return flat.astype(np.int64) @ weights


def iter_structures(sig: Signature, n: int) -> Iterator[RelStructure]:
    """enumerate_structures as RelStructure values, in code order."""
    batches = enumerate_structures(sig, n)
    for s in range(batches[0].shape[0] if batches else 1):
        yield RelStructure(sig, n, tuple(b[s] for b in batches))
