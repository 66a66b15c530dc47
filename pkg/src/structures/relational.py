"""
Finite relational structures with dense boolean storage.

Each relation of arity a is an n x ... x n (a times) boolean array. C-order
flattening of that array is the base-n tuple encoding used by the text
format, so `np.argwhere` already yields tuples in canonical order.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

from core.errors import CapacityError, PreconditionError, SignatureMismatchError
from core.models import Signature

CELL_CAP = 1 << 40


def check_capacity(n: int, arity: int, what: str = "relation") -> int:
    """Number of cells n**arity, or CapacityError above CELL_CAP."""
    cells = n ** arity
    if cells > CELL_CAP:
        raise CapacityError(f"{what} of arity {arity} over n={n} needs {cells} cells (cap 2^40)")
    return cells


def encode_tuple(tup: Sequence[int], n: int) -> int:
    """Base-n positional code, first coordinate most significant."""
    code = 0
    for x in tup:
        code = code * n + int(x)
    return code


@dataclass(frozen=True, eq=False)
class RelStructure:
    """
    A sigma-structure on the universe 0..n-1.

    Attributes:
        sig: Signature fixing relation order and arities.
        n: Universe size.
        relations: One read-only boolean array per relation, shape (n,)*arity.
    """
    sig: Signature
    n: int
    relations: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError(f"universe size must be >= 1, got {self.n}")
        if len(self.relations) != len(self.sig):
            raise SignatureMismatchError(
                f"{len(self.relations)} relation arrays for {len(self.sig)} symbols"
            )
        frozen = []
        for symbol, rel in zip(self.sig.relations, self.relations):
            check_capacity(self.n, symbol.arity, symbol.name)
            arr = np.asarray(rel, dtype=bool)
            if arr.shape != (self.n,) * symbol.arity:
                raise SignatureMismatchError(
                    f"relation {symbol.name}: shape {arr.shape} does not match arity "
                    f"{symbol.arity} over n={self.n}"
                )
            if arr.flags.writeable:
                arr = arr.copy()
                arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "relations", tuple(frozen))

    @classmethod
    def empty(cls, sig: Signature, n: int) -> "RelStructure":
        for a in sig.arities:
            check_capacity(n, a)
        return cls(sig, n, tuple(np.zeros((n,) * a, dtype=bool) for a in sig.arities))

    @classmethod
    def from_tuples(
        cls,
        sig: Signature,
        n: int,
        tuples: Mapping[Union[str, int], Iterable[Sequence[int]]],
    ) -> "RelStructure":
        """
        Build from explicit tuple lists keyed by relation name or index.

        Raises:
            PreconditionError: If a coordinate lies outside [0, n) or a tuple has the wrong length.
        """
        arrays = [np.zeros((n,) * a, dtype=bool) for a in sig.arities]
        for key, items in tuples.items():
            i = sig.index_of(key) if isinstance(key, str) else int(key)
            arity = sig.arities[i]
            for tup in items:
                tup = tuple(int(x) for x in tup)
                if len(tup) != arity:
                    raise PreconditionError(f"tuple {tup} has length {len(tup)}, expected {arity}")
                if any(not 0 <= x < n for x in tup):
                    raise PreconditionError(f"tuple {tup} has a coordinate outside [0, {n})")
                arrays[i][tup] = True
        return cls(sig, n, tuple(arrays))

    def relation(self, key: Union[str, int]) -> np.ndarray:
        return self.relations[self.sig.index_of(key) if isinstance(key, str) else key]

    def tuples(self, key: Union[str, int]) -> np.ndarray:
        """Present tuples of one relation, rows sorted by encoding."""
        return np.argwhere(self.relation(key))

    def holds(self, key: Union[str, int], tup: Sequence[int]) -> bool:
        return bool(self.relation(key)[tuple(tup)])

    def tuple_counts(self) -> Dict[str, int]:
        return {name: int(rel.sum()) for name, rel in zip(self.sig.names, self.relations)}

    def relabel(self, perm: Sequence[int]) -> "RelStructure":
        """Image under the universe bijection x -> perm[x]."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise PreconditionError("perm is not a permutation of the universe")
        inverse = np.argsort(perm)
        out = []
        for rel in self.relations:
            out.append(rel[np.ix_(*([inverse] * rel.ndim))])
        return RelStructure(self.sig, self.n, tuple(out))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelStructure):
            return NotImplemented
        return (
            self.sig == other.sig
            and self.n == other.n
            and all(np.array_equal(a, b) for a, b in zip(self.relations, other.relations))
        )

    __hash__ = None

    def __repr__(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in self.tuple_counts().items())
        return f"RelStructure(n={self.n}, sig=[{self.sig.to_inline()}], {counts})"
