"""
Parity patterns of a vertex over a base set S.

For v outside S:
    C-pattern: nonempty C ⊆ S such that {v} ∪ C has an odd number of common
               neighbours.
    B-pattern: nonempty B ⊆ S such that an odd number of vertices are
               adjacent to v and to every member of B but to no member of S \\ B.

Both are computed for many v at once: every subset gets a witness column
over the universe and one matrix product counts witnesses per (v, subset).
The two patterns determine each other through superset_parity.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.config_manager import ensure_within_budget
from core.errors import PreconditionError
from core.models import ParityPattern
from structures.combinatorics import word_count
from structures.graphs import Graph

MODES = ("B", "C")
MAX_BASE_SET = 16


def _check_base(G: Graph, S: Sequence[int], v: Optional[int] = None) -> List[int]:
    S = sorted(int(x) for x in S)
    if not S:
        raise PreconditionError("base set must be nonempty")
    if len(set(S)) != len(S):
        raise PreconditionError(f"base set has repeated elements: {S}")
    if S[0] < 0 or S[-1] >= G.n:
        raise PreconditionError(f"base set element outside [0, {G.n})")
    if len(S) > MAX_BASE_SET:
        raise PreconditionError(f"base set larger than {MAX_BASE_SET}")
    if v is not None:
        if not 0 <= v < G.n:
            raise PreconditionError(f"vertex {v} outside [0, {G.n})")
        if v in S:
            raise PreconditionError(f"vertex {v} lies in the base set")
    return S


def _subsets(S: List[int]) -> List[Tuple[int, ...]]:
    """Nonempty subsets in bitmask order: subset m-1 has bit i set for S[i]."""
    return [
        tuple(S[i] for i in range(len(S)) if mask >> i & 1)
        for mask in range(1, 1 << len(S))
    ]


def _witness_columns(G: Graph, S: List[int], mode: str) -> np.ndarray:
    """(n, 2^s - 1) float32; column m-1 marks the witnesses for subset mask m."""
    s, n = len(S), G.n
    rows = G.adjacency[S]
    if mode == "C":
        cols = np.ones((1 << s, n), dtype=bool)
        for mask in range(1, 1 << s):
            low = (mask & -mask).bit_length() - 1
            cols[mask] = cols[mask & (mask - 1)] & rows[low]
        cols = cols[1:]
    elif mode == "B":
        code = (rows.T.astype(np.int64) << np.arange(s)).sum(axis=1)
        cols = code[None, :] == np.arange(1, 1 << s)[:, None]
    else:
        raise PreconditionError(f"mode must be one of {MODES}, got {mode!r}")
    return cols.T.astype(np.float32)


def pattern_bits(
    G: Graph,
    S: Sequence[int],
    mode: str = "C",
    vertices: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> np.ndarray:
    """
    Boolean matrix (len(vertices), 2^|S| - 1): entry [r, m-1] is the parity
    bit of subset mask m for vertices[r]. Rows for members of S are
    meaningless and left to the caller to ignore.
    """
    S = _check_base(G, S)
    vertices = np.arange(G.n) if vertices is None else np.asarray(vertices, dtype=np.int64)
    ensure_within_budget(
        f"pattern_bits(n={G.n}, |S|={len(S)})",
        len(vertices) * (1 << len(S)) * word_count(G.n),
        budget,
    )
    counts = G.adjacency[vertices].astype(np.float32) @ _witness_columns(G, S, mode)
    return (counts.astype(np.int64) & 1).astype(bool)


def _as_pattern(S: List[int], bits: np.ndarray) -> ParityPattern:
    subsets = _subsets(S)
    return ParityPattern.of(S, [subsets[i] for i in np.flatnonzero(bits)])


def parity_pattern_C(G: Graph, S: Sequence[int], v: int) -> ParityPattern:
    S = _check_base(G, S, v)
    return _as_pattern(S, pattern_bits(G, S, "C", [v])[0])


def parity_pattern_B(G: Graph, S: Sequence[int], v: int) -> ParityPattern:
    S = _check_base(G, S, v)
    return _as_pattern(S, pattern_bits(G, S, "B", [v])[0])


def superset_parity(pattern: ParityPattern) -> ParityPattern:
    """
    X ∈ result iff an odd number of members of `pattern` contain X.

    Maps a B-pattern to the C-pattern of the same vertex and, being its own
    inverse over GF(2), a C-pattern back to the B-pattern.
    """
    S = list(pattern.base_set)
    members = {frozenset(m) for m in pattern.pattern}
    out = []
    for subset in _subsets(S):
        x = frozenset(subset)
        if sum(1 for m in members if x <= m) & 1:
            out.append(subset)
    return ParityPattern.of(S, out)


def find_parity_extension(
    G: Graph,
    S: Sequence[int],
    target: ParityPattern,
    mode: str = "C",
    budget: Optional[int] = None,
) -> Optional[int]:
    """
    Least v outside S whose parity pattern over S equals target.

    Args:
        G: Graph to search.
        S: Base set.
        target: Pattern over the same base set.
        mode: "C" for the common-neighbour pattern, "B" for the exclusive one.
        budget: Work budget override.

    Returns:
        The witness vertex, or None when no vertex realizes the target.
    """
    S = _check_base(G, S)
    if tuple(S) != target.base_set:
        raise PreconditionError(f"target is over {target.base_set}, not {tuple(S)}")
    wanted = np.zeros((1 << len(S)) - 1, dtype=bool)
    index = {subset: i for i, subset in enumerate(_subsets(S))}
    for member in target.pattern:
        wanted[index[member]] = True
    match = (pattern_bits(G, S, mode, budget=budget) == wanted).all(axis=1)
    match[S] = False
    hits = np.flatnonzero(match)
    return int(hits[0]) if hits.size else None
