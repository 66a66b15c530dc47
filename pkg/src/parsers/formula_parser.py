"""
Parser for quantifier-free formulas and transduction files.

Formula grammar (S-expressions, variables x1, x2, ...):

    formula := "true" | "false"
             | "(atom" NAME VAR+ ")"
             | "(eq" VAR VAR ")" | "(neq" VAR VAR ")"
             | "(not" formula ")"
             | "(and" formula+ ")" | "(or" formula+ ")"

Transduction file:

    TRANSDUCTION
    FROM R 3; S 1
    TO A 2
    FORMULA A
      (or (and (neq x1 x2) (atom R x1 x2 x1)) (and (eq x1 x2) (atom S x1)))

A formula body may span several lines; it runs until the next FORMULA line
or the end of the file. Lines starting with '#' are comments.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

from lark import Lark, Transformer, UnexpectedInput

from core.errors import ParseError, RadoforgeError
from core.models import Signature
from entropy.formulas import And, Atom, Const, Eq, Formula, Not, Or, QFTransduction

GRAMMAR = r"""
?start: formula

?formula: "true"                        -> true
        | "false"                       -> false
        | "(" "atom" NAME VAR+ ")"      -> atom
        | "(" "eq" VAR VAR ")"          -> eq
        | "(" "neq" VAR VAR ")"         -> neq
        | "(" "not" formula ")"         -> not_
        | "(" "and" formula+ ")"        -> and_
        | "(" "or" formula+ ")"         -> or_

VAR: /x[1-9][0-9]*/
NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
"""


class _ToFormula(Transformer):
    """Lark tree -> formula AST."""

    @staticmethod
    def _var(token) -> int:
        return int(str(token)[1:]) - 1

    def true(self, _):
        return Const(True)

    def false(self, _):
        return Const(False)

    def atom(self, children):
        name, *args = children
        return Atom(str(name), tuple(self._var(a) for a in args))

    def eq(self, children):
        return Eq(self._var(children[0]), self._var(children[1]))

    def neq(self, children):
        return Not(Eq(self._var(children[0]), self._var(children[1])))

    def not_(self, children):
        return Not(children[0])

    def and_(self, children):
        return And(tuple(children))

    def or_(self, children):
        return Or(tuple(children))


class FormulaParser:
    """Parses formula S-expressions and TRANSDUCTION files."""

    _parser = Lark(GRAMMAR, parser="lalr")

    @classmethod
    def parse_formula(cls, text: str, line: Optional[int] = None) -> Formula:
        """
        Raises:
            ParseError: On malformed input; `line` offsets the reported line number.
        """
        try:
            return _ToFormula().transform(cls._parser.parse(text))
        except UnexpectedInput as e:
            where = (line or 1) + max(getattr(e, "line", 1), 1) - 1
            raise ParseError(f"malformed formula near column {getattr(e, 'column', '?')}", where) from e

    @classmethod
    def parse_transduction(cls, text: str) -> QFTransduction:
        """
        Raises:
            ParseError: On malformed input or formulas that do not fit the signatures.
        """
        lines = text.split("\n")
        header: Dict[str, Tuple[int, str]] = {}
        blocks: List[Tuple[str, int, List[str]]] = []
        seen_magic = False
        for number, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not seen_magic:
                if line != "TRANSDUCTION":
                    raise ParseError("file must start with TRANSDUCTION", number)
                seen_magic = True
                continue
            key, _, rest = line.partition(" ")
            if key in ("FROM", "TO") and not blocks:
                if key in header:
                    raise ParseError(f"duplicate {key} line", number)
                header[key] = (number, rest.strip())
            elif key == "FORMULA":
                name = rest.strip()
                if not name:
                    raise ParseError("FORMULA needs a relation name", number)
                blocks.append((name, number, []))
            elif blocks:
                blocks[-1][2].append(raw)
            else:
                raise ParseError(f"unexpected line {line!r}", number)
        if not seen_magic:
            raise ParseError("empty transduction file", 1)
        for key in ("FROM", "TO"):
            if key not in header:
                raise ParseError(f"missing {key} line", len(lines))

        sigs = {}
        for key, (number, value) in header.items():
            try:
                sigs[key] = Signature.parse_inline(value)
            except ValueError as e:
                raise ParseError(str(e), number) from e
        source, target = sigs["FROM"], sigs["TO"]

        by_name: Dict[str, Formula] = {}
        for name, number, body in blocks:
            if name in by_name:
                raise ParseError(f"duplicate FORMULA {name}", number)
            if name not in target.names:
                raise ParseError(f"FORMULA {name} is not a target relation", number)
            if not "".join(body).strip():
                raise ParseError(f"FORMULA {name} has no body", number)
            by_name[name] = cls.parse_formula("\n".join(body), number + 1)
        missing = [n for n in target.names if n not in by_name]
        if missing:
            raise ParseError(f"no FORMULA for {', '.join(missing)}", len(lines))

        try:
            return QFTransduction(source, target, tuple(by_name[n] for n in target.names))
        except RadoforgeError as e:
            raise ParseError(str(e), len(lines)) from e

    @staticmethod
    def serialize_transduction(theta: QFTransduction) -> str:
        return theta.to_text()


def load_transduction(path: Path) -> QFTransduction:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Transduction file not found: {path}")
    return FormulaParser.parse_transduction(path.read_text(encoding="utf-8"))


def save_transduction(theta: QFTransduction, path: Path):
    Path(path).write_text(theta.to_text(), encoding="utf-8", newline="\n")
