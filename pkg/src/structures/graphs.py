"""
Graphs and uniform hypergraphs.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from core.errors import CapacityError, InvalidArityError, PreconditionError, SignatureMismatchError
from core.models import Signature

from .combinatorics import combinations_array
from .relational import CELL_CAP, RelStructure, check_capacity

EDGE_SIGNATURE = Signature.of(("E", 2))


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on 0..n-1 given by its adjacency matrix."""
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1] or adj.shape[0] < 1:
            raise PreconditionError(f"adjacency must be a non-empty square matrix, got {adj.shape}")
        check_capacity(adj.shape[0], 2, "adjacency")
        if not np.array_equal(adj, adj.T):
            raise PreconditionError("adjacency is not symmetric")
        if adj.diagonal().any():
            raise PreconditionError("adjacency has a loop")
        if adj.flags.writeable:
            adj = adj.copy()
            adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"bad edge ({u}, {v}) for n={n}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    def edges(self) -> np.ndarray:
        """Edges (u, v) with u < v, sorted."""
        return np.argwhere(np.triu(self.adjacency, 1))

    def edge_count(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        perm = np.asarray(perm, dtype=np.int64)
        inverse = np.argsort(perm)
        return Graph(self.adjacency[np.ix_(inverse, inverse)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """
    t-uniform hypergraph on 0..n-1.

    `edges` is kept canonical: each row strictly increasing, rows unique and
    sorted lexicographically.
    """
    n: int
    t: int
    edges: np.ndarray

    def __post_init__(self):
        if self.t < 2 or self.t > self.n:
            raise InvalidArityError(f"edge arity t={self.t} must satisfy 2 <= t <= n={self.n}")
        edges = np.array(self.edges, dtype=np.int64).reshape(-1, self.t)
        if edges.size:
            edges = np.sort(edges, axis=1)
            if (edges[:, 1:] == edges[:, :-1]).any():
                raise PreconditionError("hyperedge with repeated vertex")
            if edges.min() < 0 or edges.max() >= self.n:
                raise PreconditionError(f"hyperedge vertex outside [0, {self.n})")
            edges = np.unique(edges, axis=0)
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, t: int, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        return cls(n, t, np.array([sorted(e) for e in edges], dtype=np.int64).reshape(-1, t))

    @classmethod
    def complete(cls, n: int, t: int) -> "Hypergraph":
        return cls(n, t, combinations_array(n, t))

    @classmethod
    def empty(cls, n: int, t: int) -> "Hypergraph":
        return cls(n, t, np.zeros((0, t), dtype=np.int64))

    def edge_count(self) -> int:
        return self.edges.shape[0]

    @cached_property
    def indicator(self) -> np.ndarray:
        """Dense symmetric membership tensor of shape (n,)*t."""
        check_capacity(self.n, self.t, "hypergraph indicator")
        dense = np.zeros((self.n,) * self.t, dtype=bool)
        if self.edges.size:
            for order in permutations(range(self.t)):
                dense[tuple(self.edges[:, list(order)].T)] = True
        dense.setflags(write=False)
        return dense

    def has_edge(self, vs: Sequence[int]) -> bool:
        if len(set(vs)) != self.t:
            return False
        return bool(self.indicator[tuple(vs)])

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        perm = np.asarray(perm, dtype=np.int64)
        return Hypergraph(self.n, self.t, perm[self.edges])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.n == other.n and self.t == other.t and np.array_equal(self.edges, other.edges)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, t={self.t}, edges={self.edge_count()})"


def candidate_edge_count(n: int, t: int) -> int:
    count = comb(n, t)
    if count > CELL_CAP:
        raise CapacityError(f"C({n},{t}) candidate edges exceed the storage cap")
    return count


def structure_from_graph(G: Graph) -> RelStructure:
    """The <E:2> structure with E symmetric and irreflexive."""
    return RelStructure(EDGE_SIGNATURE, G.n, (G.adjacency,))


def graph_from_structure(A: RelStructure) -> Graph:
    """
    Inverse of structure_from_graph.

    Raises:
        SignatureMismatchError: If A is not over a single binary relation.
        PreconditionError: If that relation is not symmetric and irreflexive.
    """
    if A.sig.arities != (2,):
        raise SignatureMismatchError(f"expected one binary relation, got [{A.sig.to_inline()}]")
    return Graph(A.relations[0])
