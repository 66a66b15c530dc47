"""Text formats for graphs, structures, certificates and transductions."""

from .certificate import load_certificate, parse_certificate, save_certificate, serialize_certificate
from .formula_parser import FormulaParser, load_transduction, save_transduction
from .text_format import TextFormat, load, parse, save, serialize

__all__ = [
    "load_certificate",
    "parse_certificate",
    "save_certificate",
    "serialize_certificate",
    "FormulaParser",
    "load_transduction",
    "save_transduction",
    "TextFormat",
    "load",
    "parse",
    "save",
    "serialize",
]
