"""
Deterministic construction of finite Rado graphs and Rado structures.

The universe is cut into m = 2^{3k} contiguous parts indexed by the
vertices of a k-dominating tournament. Inside every part the elements cycle
through a pattern range (universal-set members for graphs; pairs of a
permuted hash function and an atomic type for structures), so each part
realizes every pattern. A pair or tuple is decided by the pattern of the
element sitting in the dominating part.
"""

import math
from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional, Tuple, Union

import numpy as np

from core.errors import (
    BudgetExceededError,
    ConstructionError,
    InfeasibleParametersError,
    PreconditionError,
)
from core.models import Signature
from core.prng import Prng
from extension_axioms.atomic import atomic_type_entries, entry_count, MAX_TYPE_BITS
from extension_axioms.graph import check_ea_graph
from extension_axioms.structure import check_ea_structure
from structures.graphs import Graph
from structures.relational import RelStructure, check_capacity

from .tournament import MAX_K, Tournament, find_dominating_tournament
from .universal import PerfectHashFamily, UniversalSet, build_perfect_hash_family, build_universal_set

KINDS = ("graph", "structure")
TUPLE_CHUNK = 1 << 20


def part_count(k: int) -> int:
    return 1 << (3 * k)


def minimal_feasible_n(kind: str, k: int, range_size: int) -> int:
    """Smallest n whose parts can each hold the whole pattern range."""
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got {kind!r}")
    return part_count(k) * range_size


def part_boundaries(n: int, m: int) -> np.ndarray:
    """m contiguous blocks; the first n mod m blocks get the extra element."""
    q, r = divmod(n, m)
    sizes = [q + 1] * r + [q] * (m - r)
    return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)


def cyclic_pattern(starts: np.ndarray, range_size: int) -> np.ndarray:
    """pattern[v] = (v - start of v's part) mod range_size."""
    n = int(starts[-1])
    part = np.repeat(np.arange(starts.size - 1), np.diff(starts))
    return (np.arange(n) - starts[part]) % range_size


def permutation_closure(F: PerfectHashFamily) -> Tuple[np.ndarray, np.ndarray]:
    """
    Distinct functions pi o f for f in F and pi in S_k.

    Returns:
        (index, perm): index[r] is the source function of closure member r
        and perm[r] the permutation of 1..k applied to its values, in
        (index, lexicographic perm) order with duplicates dropped.
    """
    seen = set()
    index: List[int] = []
    perms: List[Tuple[int, ...]] = []
    for i, f in enumerate(F.funcs):
        for perm in permutations(range(1, F.k + 1)):
            g = np.array(perm, dtype=np.int8)[f - 1]
            key = g.tobytes()
            if key in seen:
                continue
            seen.add(key)
            index.append(i)
            perms.append(perm)
    return np.array(index, dtype=np.int64), np.array(perms, dtype=np.int8).reshape(-1, F.k)


@dataclass(frozen=True, eq=False)
class RadoCertificate:
    """
    Everything needed to rebuild a construction bit for bit.

    Attributes:
        kind: "graph" or "structure".
        n: Universe size.
        k: Extension size.
        tournament: The k-dominating tournament on the parts.
        part_starts: m+1 part boundaries; part j is [part_starts[j], part_starts[j+1]).
        pattern: Per element, an index into the pattern range.
        universal: Universal set whose members are the range (graphs).
        sig: Signature (structures).
        hash_family: Base perfect hash family (structures).
        closure_index, closure_perm: Permutation closure of hash_family (structures).
    """
    kind: str
    n: int
    k: int
    tournament: Tournament
    part_starts: np.ndarray
    pattern: np.ndarray
    universal: Optional[UniversalSet] = None
    sig: Optional[Signature] = None
    hash_family: Optional[PerfectHashFamily] = None
    closure_index: Optional[np.ndarray] = None
    closure_perm: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise PreconditionError(f"certificate universe must be non-empty, got n={self.n}")
        m = part_count(self.k)
        if self.tournament.m != m:
            raise PreconditionError(f"tournament has {self.tournament.m} vertices, expected {m}")
        starts = np.array(self.part_starts, dtype=np.int64)
        if starts.shape != (m + 1,) or starts[0] != 0 or starts[-1] != self.n or (np.diff(starts) < 0).any():
            raise PreconditionError("part boundaries must partition 0..n-1 into m blocks")
        if self.kind == "graph":
            if self.universal is None or self.universal.n != self.n or self.universal.k != self.k:
                raise PreconditionError("graph certificates need an (n,k)-universal set")
        else:
            if self.sig is None or self.hash_family is None or self.closure_index is None:
                raise PreconditionError("structure certificates need sig, hash family and closure")
            self._check_closure()
        range_size = self.range_size
        pattern = np.array(self.pattern, dtype=np.int64)
        if pattern.shape != (self.n,) or pattern.min() < 0 or pattern.max() >= range_size:
            raise PreconditionError(f"pattern must map each element into 0..{range_size - 1}")
        for j in range(m):
            block = pattern[starts[j]:starts[j + 1]]
            if np.unique(block).size != range_size:
                raise PreconditionError(f"part {j} does not cover the pattern range")
        for name, value in (("part_starts", starts), ("pattern", pattern)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    def _check_closure(self):
        family = self.hash_family
        if family.n != self.n or family.k != self.k:
            raise PreconditionError("structure certificates need an (n,k)-perfect hash family")
        index = np.array(self.closure_index, dtype=np.int64).reshape(-1)
        if self.closure_perm is None:
            raise PreconditionError("structure certificates need closure permutations")
        perm = np.array(self.closure_perm, dtype=np.int64)
        if index.size == 0 or perm.shape != (index.size, self.k):
            raise PreconditionError(f"closure needs one permutation of 1..{self.k} per member")
        if index.min() < 0 or index.max() >= family.size:
            raise PreconditionError(f"closure indices must lie in 0..{family.size - 1}")
        if (np.sort(perm, axis=1) != np.arange(1, self.k + 1)).any():
            raise PreconditionError(f"closure rows must be permutations of 1..{self.k}")
        for name, value in (("closure_index", index), ("closure_perm", perm.astype(np.int8))):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def type_bits(self) -> int:
        return entry_count(self.sig, self.k) if self.sig is not None else 0

    @property
    def range_size(self) -> int:
        if self.kind == "graph":
            return self.universal.size
        return len(self.closure_index) << self.type_bits

    def parts(self) -> np.ndarray:
        """Part index of every element."""
        return np.repeat(np.arange(self.part_starts.size - 1), np.diff(self.part_starts))

    def closure_functions(self) -> np.ndarray:
        """Values of every closure member, shape (|F*|, n), entries 1..k."""
        base = self.hash_family.funcs[self.closure_index].astype(np.int64) - 1
        return np.take_along_axis(self.closure_perm.astype(np.int64), base, axis=1)


def graph_from_certificate(cert: RadoCertificate) -> Graph:
    """{u, v} is an edge iff v's part has the arc to u's part and u lies in pattern(v)."""
    part = cert.parts()
    member = cert.universal.sets[cert.pattern]
    directed = cert.tournament.orient[part[:, None], part[None, :]] & member
    return Graph(directed | directed.T)


def structure_from_certificate(cert: RadoCertificate) -> RelStructure:
    """
    Decide every tuple by its dominating element.

    A tuple is present only when one of its parts has arcs to all its other
    parts, that part holds exactly one distinct tuple element v_0, and
    pattern(v_0) = (f, type) contains the entry (R, s) where s_l is 0 for
    u_l = v_0 and f(u_l) otherwise.
    """
    n, k, sig = cert.n, cert.k, cert.sig
    part = cert.parts()
    orient = cert.tournament.orient
    funcs = cert.closure_functions()
    types = 1 << cert.type_bits
    fidx = cert.pattern // types
    tcode = cert.pattern % types

    lookups = [np.full((k + 1) ** a, -1, dtype=np.int64) for a in sig.arities]
    for bit, (rel, idx) in enumerate(atomic_type_entries(sig, k)):
        lookups[rel][np.ravel_multi_index(idx, (k + 1,) * len(idx))] = bit

    relations = []
    for r, a in enumerate(sig.arities):
        check_capacity(n, a, sig.names[r])
        total = n ** a
        out = np.zeros(total, dtype=bool)
        for start in range(0, total, TUPLE_CHUNK):
            flat = np.arange(start, min(total, start + TUPLE_CHUNK), dtype=np.int64)
            U = np.stack(np.unravel_index(flat, (n,) * a), axis=1)
            P = part[U]
            rows = np.arange(U.shape[0])

            dom = np.ones(U.shape, dtype=bool)
            for l in range(a):
                for j in range(a):
                    if j != l:
                        dom[:, l] &= (P[:, j] == P[:, l]) | orient[P[:, l], P[:, j]]
            has_dom = dom.any(axis=1)
            lead = np.argmax(dom, axis=1)
            v0 = U[rows, lead]
            in_lead_part = P == P[rows, lead][:, None]
            single = (~in_lead_part | (U == v0[:, None])).all(axis=1)

            s = np.where(U == v0[:, None], 0, funcs[fidx[v0][:, None], U])
            pos = lookups[r][np.ravel_multi_index(tuple(s.T), (k + 1,) * a)]
            bit_set = (tcode[v0] >> np.maximum(pos, 0)) & 1 == 1
            out[start:start + flat.size] = has_dom & single & (pos >= 0) & bit_set
        relations.append(out.reshape((n,) * a))
    return RelStructure(sig, n, tuple(relations))


def rebuild_from_certificate(cert: RadoCertificate) -> Union[Graph, RelStructure]:
    if cert.kind == "graph":
        return graph_from_certificate(cert)
    return structure_from_certificate(cert)


def _check_k(k: int):
    if not 1 <= k <= MAX_K:
        raise PreconditionError(f"k must satisfy 1 <= k <= {MAX_K}, got {k}")


def rado_graph(
    n: int,
    k: int,
    rng: Optional[Prng] = None,
    backend: str = "greedy",
    batch_size: int = 8,
    max_tries: int = 64,
    verify: bool = True,
    budget: Optional[int] = None,
) -> Tuple[Graph, RadoCertificate]:
    """
    Graph on n vertices satisfying EA_k.

    Args:
        n: Number of vertices.
        k: Extension size, 1..4.
        rng: Seed source; the tournament uses child 0, the universal set child 1.
        backend: Universal-set backend.
        batch_size: Greedy candidates per step.
        max_tries: Attempts for each randomized ingredient.
        verify: Run check_ea_graph on the result when it fits the budget.
        budget: Work budget for ingredient and result verification.

    Returns:
        (Graph, RadoCertificate)

    Raises:
        InfeasibleParametersError: If some part cannot hold every pattern.
        ExhaustedTriesError: From the ingredient searches.
        ConstructionError: If post-verification finds a violation.
    """
    _check_k(k)
    rng = rng or Prng()
    m = part_count(k)
    lower = minimal_feasible_n("graph", k, 1 << k)
    if n < lower:
        raise InfeasibleParametersError(f"rado_graph(n={n}, k={k}): parts too small", minimal_n=lower)

    tournament = find_dominating_tournament(k, rng.child(0), max_tries, budget)
    universal = build_universal_set(n, k, backend, rng.child(1), batch_size, max_tries, budget)
    if n // m < universal.size:
        raise InfeasibleParametersError(
            f"rado_graph(n={n}, k={k}): {m} parts of size {n // m} cannot hold {universal.size} patterns",
            minimal_n=minimal_feasible_n("graph", k, universal.size),
        )
    starts = part_boundaries(n, m)
    cert = RadoCertificate(
        kind="graph", n=n, k=k, tournament=tournament, part_starts=starts,
        pattern=cyclic_pattern(starts, universal.size), universal=universal,
    )
    G = graph_from_certificate(cert)
    if verify:
        _post_verify(lambda: check_ea_graph(G, k, budget), "rado_graph", n, k)
    return G, cert


def rado_structure(
    sig: Signature,
    n: int,
    k: int,
    rng: Optional[Prng] = None,
    backend: str = "greedy",
    batch_size: int = 8,
    max_tries: int = 64,
    verify: bool = True,
    budget: Optional[int] = None,
) -> Tuple[RelStructure, RadoCertificate]:
    """
    sigma-structure on n elements satisfying EA^sigma_k.

    The minimal n reported before any ingredient is built assumes a single
    hash function whose permutations are all distinct (|F*| = k!).

    Raises:
        InfeasibleParametersError: If some part cannot hold the pattern range.
        ExhaustedTriesError: From the ingredient searches.
        ConstructionError: If post-verification finds a violation.
    """
    _check_k(k)
    rng = rng or Prng()
    m = part_count(k)
    bits = entry_count(sig, k)
    lower = m * math.factorial(k) << bits
    if n < lower or bits > MAX_TYPE_BITS:
        raise InfeasibleParametersError(
            f"rado_structure(n={n}, k={k}): {1 << bits} atomic types per part", minimal_n=lower
        )
    for symbol in sig.relations:
        check_capacity(n, symbol.arity, symbol.name)

    tournament = find_dominating_tournament(k, rng.child(0), max_tries, budget)
    family = build_perfect_hash_family(n, k, backend, rng.child(1), batch_size, max_tries, budget)
    closure_index, closure_perm = permutation_closure(family)
    range_size = len(closure_index) << bits
    if n // m < range_size:
        raise InfeasibleParametersError(
            f"rado_structure(n={n}, k={k}): {m} parts of size {n // m} cannot hold {range_size} patterns",
            minimal_n=minimal_feasible_n("structure", k, range_size),
        )
    starts = part_boundaries(n, m)
    cert = RadoCertificate(
        kind="structure", n=n, k=k, tournament=tournament, part_starts=starts,
        pattern=cyclic_pattern(starts, range_size), sig=sig, hash_family=family,
        closure_index=closure_index, closure_perm=closure_perm,
    )
    A = structure_from_certificate(cert)
    if verify:
        _post_verify(lambda: check_ea_structure(A, k, budget), "rado_structure", n, k)
    return A, cert


def _post_verify(check, what: str, n: int, k: int):
    try:
        report = check()
    except BudgetExceededError:
        return
    if not report.holds:
        raise ConstructionError(f"{what}(n={n}, k={k}) fails its own check: {report.violation}")
