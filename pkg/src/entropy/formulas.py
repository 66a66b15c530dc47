"""
Quantifier-free formulas and transductions.

A formula has free variables x1..xa (indices 0..a-1 internally) and is built
from relation atoms, equalities, boolean constants, negation, conjunction
and disjunction. Evaluation is vectorized: a formula over a free variables
becomes a boolean array of shape (n,)*a, optionally with a leading batch
axis so whole families of structures are transformed at once.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

import numpy as np

from core.errors import PreconditionError, SignatureMismatchError
from core.models import Signature
from structures.relational import RelStructure

Cell = Tuple[int, Tuple[int, ...]]


class _Context:
    """Relation arrays and open index grids shared by one evaluation."""

    def __init__(self, sig: Signature, relations: Sequence[np.ndarray], n: int, arity: int, batched: bool):
        self.index = {name: i for i, name in enumerate(sig.names)}
        self.relations = relations
        self.grids = np.indices((n,) * arity, sparse=True) if arity else ()
        self.lead = (slice(None),) if batched else ()


class Formula:
    """Base class of the formula AST."""

    def evaluate(self, ctx: _Context) -> np.ndarray:
        raise NotImplementedError

    def partial(self, values: Tuple[int, ...]) -> Tuple[Optional[bool], FrozenSet[Tuple[str, Tuple[int, ...]]]]:
        """
        Specialize to concrete element values.

        Returns (constant, cells): constant is the decided truth value, or
        None when the value still depends on the source cells listed.
        """
        raise NotImplementedError

    def atoms(self) -> Tuple["Atom", ...]:
        return ()

    def max_variable(self) -> int:
        return -1


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def evaluate(self, ctx):
        return np.bool_(self.value)

    def partial(self, values):
        return self.value, frozenset()

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Atom(Formula):
    relation: str
    args: Tuple[int, ...]

    def evaluate(self, ctx):
        rel = ctx.relations[ctx.index[self.relation]]
        return rel[ctx.lead + tuple(ctx.grids[j] for j in self.args)]

    def partial(self, values):
        return None, frozenset({(self.relation, tuple(values[j] for j in self.args))})

    def atoms(self):
        return (self,)

    def max_variable(self):
        return max(self.args, default=-1)

    def __str__(self) -> str:
        return "(atom " + " ".join([self.relation] + [f"x{j + 1}" for j in self.args]) + ")"


@dataclass(frozen=True)
class Eq(Formula):
    left: int
    right: int

    def evaluate(self, ctx):
        return ctx.grids[self.left] == ctx.grids[self.right]

    def partial(self, values):
        return values[self.left] == values[self.right], frozenset()

    def max_variable(self):
        return max(self.left, self.right)

    def __str__(self) -> str:
        return f"(eq x{self.left + 1} x{self.right + 1})"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def evaluate(self, ctx):
        return np.logical_not(self.body.evaluate(ctx))

    def partial(self, values):
        const, cells = self.body.partial(values)
        return (None if const is None else not const), cells

    def atoms(self):
        return self.body.atoms()

    def max_variable(self):
        return self.body.max_variable()

    def __str__(self) -> str:
        if isinstance(self.body, Eq):
            return f"(neq x{self.body.left + 1} x{self.body.right + 1})"
        return f"(not {self.body})"


def Neq(left: int, right: int) -> Not:
    return Not(Eq(left, right))


@dataclass(frozen=True)
class And(Formula):
    parts: Tuple[Formula, ...]

    def evaluate(self, ctx):
        return reduce(np.logical_and, (p.evaluate(ctx) for p in self.parts), np.bool_(True))

    def partial(self, values):
        cells = set()
        for part in self.parts:
            const, part_cells = part.partial(values)
            if const is False:
                return False, frozenset()
            if const is None:
                cells |= part_cells
        return (True if not cells else None), frozenset(cells)

    def atoms(self):
        return tuple(a for p in self.parts for a in p.atoms())

    def max_variable(self):
        return max((p.max_variable() for p in self.parts), default=-1)

    def __str__(self) -> str:
        return "(and " + " ".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class Or(Formula):
    parts: Tuple[Formula, ...]

    def evaluate(self, ctx):
        return reduce(np.logical_or, (p.evaluate(ctx) for p in self.parts), np.bool_(False))

    def partial(self, values):
        cells = set()
        for part in self.parts:
            const, part_cells = part.partial(values)
            if const is True:
                return True, frozenset()
            if const is None:
                cells |= part_cells
        return (False if not cells else None), frozenset(cells)

    def atoms(self):
        return tuple(a for p in self.parts for a in p.atoms())

    def max_variable(self):
        return max((p.max_variable() for p in self.parts), default=-1)

    def __str__(self) -> str:
        return "(or " + " ".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class QFTransduction:
    """
    One quantifier-free formula per target relation, over the source signature.

    Attributes:
        source: Signature the formulas read.
        target: Signature produced; formula i has target.arities[i] free variables.
        formulas: Formulas in target declaration order.
    """
    source: Signature
    target: Signature
    formulas: Tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        if len(self.formulas) != len(self.target):
            raise SignatureMismatchError(
                f"{len(self.formulas)} formulas for {len(self.target)} target relations"
            )
        arities = dict(zip(self.source.names, self.source.arities))
        for symbol, formula in zip(self.target.relations, self.formulas):
            if formula.max_variable() >= symbol.arity:
                raise PreconditionError(
                    f"formula for {symbol.name} uses x{formula.max_variable() + 1} "
                    f"but the relation has arity {symbol.arity}"
                )
            for atom in formula.atoms():
                if atom.relation not in arities:
                    raise SignatureMismatchError(f"unknown source relation {atom.relation!r}")
                if len(atom.args) != arities[atom.relation]:
                    raise SignatureMismatchError(
                        f"atom {atom} has {len(atom.args)} arguments, "
                        f"{atom.relation} has arity {arities[atom.relation]}"
                    )

    @classmethod
    def identity(cls, sig: Signature) -> "QFTransduction":
        return cls(sig, sig, tuple(Atom(name, tuple(range(a))) for name, a in zip(sig.names, sig.arities)))

    def evaluate(self, relations: Sequence[np.ndarray], n: int, batched: bool = False) -> Tuple[np.ndarray, ...]:
        """
        Target relation arrays from source relation arrays.

        With batched=True every array carries a leading batch axis of the
        same length and the result does too.
        """
        lead = (relations[0].shape[0],) if batched and relations else ()
        out = []
        for a, formula in zip(self.target.arities, self.formulas):
            ctx = _Context(self.source, relations, n, a, batched)
            value = formula.evaluate(ctx)
            out.append(np.array(np.broadcast_to(value, lead + (n,) * a), dtype=bool))
        return tuple(out)

    def routing(self, n: int) -> Dict[Cell, Cell]:
        """
        Source cell read by each target cell at universe size n.

        Cells are (relation index, tuple). Raises when a target cell reads
        no source cell or several, or when two target cells read the same
        source cell.

        Raises:
            PreconditionError: If the transduction is not a one-to-one cell routing.
        """
        index = {name: i for i, name in enumerate(self.source.names)}
        routes: Dict[Cell, Cell] = {}
        readers: Dict[Cell, Cell] = {}
        for t, (a, formula) in enumerate(zip(self.target.arities, self.formulas)):
            for values in np.ndindex(*((n,) * a)):
                const, cells = formula.partial(values)
                if const is not None or len(cells) != 1:
                    raise PreconditionError(
                        f"target cell {self.target.names[t]}{values} reads {len(cells)} source cells"
                    )
                name, tup = next(iter(cells))
                cell = (index[name], tup)
                if cell in readers:
                    raise PreconditionError(
                        f"source cell {name}{tup} is read by {self.target.names[readers[cell][0]]}"
                        f"{readers[cell][1]} and {self.target.names[t]}{values}"
                    )
                readers[cell] = (t, values)
                routes[(t, values)] = cell
        return routes

    def to_text(self) -> str:
        lines = ["TRANSDUCTION", f"FROM {self.source.to_inline()}", f"TO {self.target.to_inline()}"]
        for name, formula in zip(self.target.names, self.formulas):
            lines.append(f"FORMULA {name}")
            lines.append(f"  {formula}")
        return "\n".join(lines) + "\n"


def apply_qf_transduction(theta: QFTransduction, A: RelStructure) -> RelStructure:
    """
    Raises:
        SignatureMismatchError: If A is not over theta's source signature.
    """
    if A.sig != theta.source:
        raise SignatureMismatchError(
            f"structure signature [{A.sig.to_inline()}] is not the transduction source "
            f"[{theta.source.to_inline()}]"
        )
    return RelStructure(theta.target, A.n, theta.evaluate(A.relations, A.n))
