"""
Canonical text format for graphs, hypergraphs, signatures and structures.

    GRAPH n=<n>                 one "u v" line per edge, u < v, sorted
    HYPERGRAPH n=<n> t=<t>      one sorted t-tuple per line, lines sorted
    STRUCTURE n=<n>             then per relation "REL <name> <arity>"
                                followed by its tuples sorted by encoding
    R <name> <arity>            signature lines, declaration order

Serialization is canonical (UTF-8, LF). Parsing accepts blank lines and
`#` comments and reports malformed input with its line number.
"""

import re
from pathlib import Path
from typing import Iterator, List, Set, Tuple, Union

import numpy as np
from pydantic import ValidationError

from core.errors import ParseError, RadoforgeError
from core.models import RelationSymbol, Signature
from structures.graphs import Graph, Hypergraph
from structures.relational import RelStructure, check_capacity

TextValue = Union[Graph, Hypergraph, RelStructure]

GRAPH_HEADER = re.compile(r"^GRAPH n=(\d+)$")
HYPERGRAPH_HEADER = re.compile(r"^HYPERGRAPH n=(\d+) t=(\d+)$")
STRUCTURE_HEADER = re.compile(r"^STRUCTURE n=(\d+)$")
REL_LINE = re.compile(r"^REL (\S+) (\d+)$")
SIG_LINE = re.compile(r"^R (\S+) (\d+)$")
INT_TOKEN = re.compile(r"-?[0-9]+")


def _lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _ints(line: str, number: int) -> List[int]:
    tokens = line.split()
    if not all(INT_TOKEN.fullmatch(tok) for tok in tokens):
        raise ParseError(f"expected integers, got {line!r}", number)
    return [int(tok) for tok in tokens]


class TextFormat:
    """
    Parser and serializer for the canonical text format.
    """

    @classmethod
    def serialize(cls, value: Union[TextValue, Signature]) -> str:
        if isinstance(value, Graph):
            return cls._serialize_graph(value)
        if isinstance(value, Hypergraph):
            return cls._serialize_hypergraph(value)
        if isinstance(value, RelStructure):
            return cls._serialize_structure(value)
        if isinstance(value, Signature):
            return "".join(f"R {r.name} {r.arity}\n" for r in value.relations)
        raise TypeError(f"cannot serialize {type(value).__name__}")

    @classmethod
    def parse(cls, text: str) -> TextValue:
        """
        Parse a graph, hypergraph or structure, chosen by the header line.

        Raises:
            ParseError: On a missing header or any malformed line.
        """
        lines = list(_lines(text))
        if not lines:
            raise ParseError("empty input", 1)
        number, header = lines[0]
        body = lines[1:]
        if GRAPH_HEADER.match(header):
            return cls._parse_graph(int(GRAPH_HEADER.match(header).group(1)), number, body)
        match = HYPERGRAPH_HEADER.match(header)
        if match:
            return cls._parse_hypergraph(int(match.group(1)), int(match.group(2)), number, body)
        match = STRUCTURE_HEADER.match(header)
        if match:
            return cls._parse_structure(int(match.group(1)), number, body)
        raise ParseError(f"unknown header {header!r}", number)

    @classmethod
    def parse_signature(cls, text: str) -> Signature:
        pairs = []
        for number, line in _lines(text):
            match = SIG_LINE.match(line)
            if not match:
                raise ParseError(f"expected 'R <name> <arity>', got {line!r}", number)
            pairs.append((match.group(1), int(match.group(2)), number))
        if not pairs:
            raise ParseError("empty signature", 1)
        return cls._signature(pairs)

    # --- serialization -------------------------------------------------------

    @staticmethod
    def _serialize_graph(G: Graph) -> str:
        out = [f"GRAPH n={G.n}"]
        out.extend(f"{u} {v}" for u, v in G.edges().tolist())
        return "\n".join(out) + "\n"

    @staticmethod
    def _serialize_hypergraph(H: Hypergraph) -> str:
        out = [f"HYPERGRAPH n={H.n} t={H.t}"]
        out.extend(" ".join(map(str, e)) for e in H.edges.tolist())
        return "\n".join(out) + "\n"

    @staticmethod
    def _serialize_structure(A: RelStructure) -> str:
        out = [f"STRUCTURE n={A.n}"]
        for i, symbol in enumerate(A.sig.relations):
            out.append(f"REL {symbol.name} {symbol.arity}")
            out.extend(" ".join(map(str, tup)) for tup in A.tuples(i).tolist())
        return "\n".join(out) + "\n"

    # --- parsing -------------------------------------------------------------

    @staticmethod
    def _check_n(n: int, number: int):
        if n < 1:
            raise ParseError("universe size must be >= 1", number)

    @classmethod
    def _parse_graph(cls, n: int, header_line: int, body) -> Graph:
        cls._check_n(n, header_line)
        try:
            check_capacity(n, 2, "adjacency")
        except RadoforgeError as e:
            raise ParseError(str(e), header_line) from e
        adj = np.zeros((n, n), dtype=bool)
        for number, line in body:
            values = _ints(line, number)
            if len(values) != 2:
                raise ParseError(f"edge line needs 2 vertices, got {len(values)}", number)
            u, v = values
            if u == v:
                raise ParseError(f"loop at vertex {u}", number)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex outside [0, {n})", number)
            if adj[u, v]:
                raise ParseError(f"duplicate edge {min(u, v)} {max(u, v)}", number)
            adj[u, v] = adj[v, u] = True
        return Graph(adj)

    @classmethod
    def _parse_hypergraph(cls, n: int, t: int, header_line: int, body) -> Hypergraph:
        cls._check_n(n, header_line)
        if t < 2 or t > n:
            raise ParseError(f"edge arity t={t} must satisfy 2 <= t <= n", header_line)
        edges = []
        seen = set()
        for number, line in body:
            values = _ints(line, number)
            if len(values) != t:
                raise ParseError(f"hyperedge needs {t} vertices, got {len(values)}", number)
            if len(set(values)) != t:
                raise ParseError("hyperedge with repeated vertex", number)
            if any(not 0 <= x < n for x in values):
                raise ParseError(f"vertex outside [0, {n})", number)
            edge = tuple(sorted(values))
            if edge in seen:
                raise ParseError(f"duplicate hyperedge {edge}", number)
            seen.add(edge)
            edges.append(edge)
        return Hypergraph(n, t, np.array(edges, dtype=np.int64).reshape(-1, t))

    @classmethod
    def _parse_structure(cls, n: int, header_line: int, body) -> RelStructure:
        cls._check_n(n, header_line)
        pairs: List[Tuple[str, int, int]] = []
        tuples: List[Set[Tuple[int, ...]]] = []
        for number, line in body:
            match = REL_LINE.match(line)
            if match:
                pairs.append((match.group(1), int(match.group(2)), number))
                tuples.append(set())
                continue
            if not pairs:
                raise ParseError("tuple before any REL line", number)
            values = _ints(line, number)
            arity = pairs[-1][1]
            if len(values) != arity:
                raise ParseError(f"tuple needs {arity} coordinates, got {len(values)}", number)
            if any(not 0 <= x < n for x in values):
                raise ParseError(f"coordinate outside [0, {n})", number)
            if tuple(values) in tuples[-1]:
                raise ParseError(f"duplicate tuple {tuple(values)} in {pairs[-1][0]}", number)
            tuples[-1].add(tuple(values))
        sig = cls._signature(pairs)
        arrays = []
        for (name, arity, number), items in zip(pairs, tuples):
            try:
                check_capacity(n, arity, name)
            except RadoforgeError as e:
                raise ParseError(str(e), number) from e
            rel = np.zeros((n,) * arity, dtype=bool)
            if items:
                rel[tuple(np.array(list(items), dtype=np.int64).T)] = True
            arrays.append(rel)
        return RelStructure(sig, n, tuple(arrays))

    @staticmethod
    def _signature(pairs: List[Tuple[str, int, int]]) -> Signature:
        symbols = []
        seen = set()
        for name, arity, number in pairs:
            if name in seen:
                raise ParseError(f"duplicate relation {name!r}", number)
            seen.add(name)
            try:
                symbols.append(RelationSymbol(name=name, arity=arity))
            except ValidationError as e:
                raise ParseError(f"bad relation {name!r}/{arity}: {e.errors()[0]['msg']}", number) from e
        return Signature(relations=tuple(symbols))


def serialize(value: Union[TextValue, Signature]) -> str:
    return TextFormat.serialize(value)


def parse(text: str) -> TextValue:
    return TextFormat.parse(text)


def load(path: Path) -> TextValue:
    """Read and parse a file in the canonical format."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input not found: {path}")
    return TextFormat.parse(path.read_text(encoding="utf-8"))


def save(value: Union[TextValue, Signature], path: Path):
    Path(path).write_text(TextFormat.serialize(value), encoding="utf-8", newline="\n")
