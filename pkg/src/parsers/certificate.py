"""
Text form of Rado construction certificates.

    RADO-CERT v1
    KIND graph|structure
    N <n>
    K <k>
    SIG <name arity; ...>           structure only
    TOURNAMENT <m>                  m rows of 0/1, row i column j = arc i -> j
    PARTS <m>                       m lines "<start> <end>", half-open
    UNIVERSAL <size>                graph only: one 0/1 row of length n per member
    PHF <size>                      structure only: one row of n digits 1..k per function
    CLOSURE <size>                  structure only: "<function index> <perm of 1..k>"
    PATTERN <n>                     pattern indices, whitespace separated
    END
"""

from pathlib import Path
from typing import List, Tuple

import numpy as np

from core.errors import ParseError, RadoforgeError
from core.models import Signature
from rado.construct import RadoCertificate
from rado.tournament import Tournament
from rado.universal import PerfectHashFamily, UniversalSet

MAGIC = "RADO-CERT v1"
PATTERN_PER_LINE = 32


def serialize_certificate(cert: RadoCertificate) -> str:
    out = [MAGIC, f"KIND {cert.kind}", f"N {cert.n}", f"K {cert.k}"]
    if cert.kind == "structure":
        out.append(f"SIG {cert.sig.to_inline()}")
    orient = cert.tournament.orient
    out.append(f"TOURNAMENT {orient.shape[0]}")
    out.extend("".join("1" if x else "0" for x in row) for row in orient.tolist())
    starts = cert.part_starts.tolist()
    out.append(f"PARTS {len(starts) - 1}")
    out.extend(f"{a} {b}" for a, b in zip(starts[:-1], starts[1:]))
    if cert.kind == "graph":
        out.append(f"UNIVERSAL {cert.universal.size}")
        out.extend("".join("1" if x else "0" for x in row) for row in cert.universal.sets.tolist())
    else:
        out.append(f"PHF {cert.hash_family.size}")
        out.extend("".join(str(x) for x in row) for row in cert.hash_family.funcs.tolist())
        out.append(f"CLOSURE {len(cert.closure_index)}")
        for i, perm in zip(cert.closure_index.tolist(), cert.closure_perm.tolist()):
            out.append(" ".join(str(x) for x in [i] + perm))
    pattern = cert.pattern.tolist()
    out.append(f"PATTERN {len(pattern)}")
    for start in range(0, len(pattern), PATTERN_PER_LINE):
        out.append(" ".join(str(x) for x in pattern[start:start + PATTERN_PER_LINE]))
    out.append("END")
    return "\n".join(out) + "\n"


class _Reader:
    """Line cursor that reports 1-based line numbers."""

    def __init__(self, text: str):
        self.lines: List[Tuple[int, str]] = [
            (i, line.strip()) for i, line in enumerate(text.split("\n"), start=1) if line.strip()
        ]
        self.pos = 0

    @property
    def line_number(self) -> int:
        if self.pos < len(self.lines):
            return self.lines[self.pos][0]
        return self.lines[-1][0] + 1 if self.lines else 1

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of certificate", self.line_number)
        line = self.lines[self.pos][1]
        self.pos += 1
        return line

    def keyword(self, key: str) -> str:
        number = self.line_number
        line = self.next()
        head, _, rest = line.partition(" ")
        if head != key:
            raise ParseError(f"expected {key}, got {line!r}", number)
        return rest.strip()

    def count(self, key: str) -> int:
        number = self.line_number
        value = self.keyword(key)
        if not value.isdigit():
            raise ParseError(f"{key} needs a non-negative integer, got {value!r}", number)
        return int(value)

    def bit_rows(self, rows: int, width: int) -> np.ndarray:
        out = np.zeros((rows, width), dtype=bool)
        for r in range(rows):
            number = self.line_number
            line = self.next()
            if len(line) != width or set(line) - {"0", "1"}:
                raise ParseError(f"expected {width} binary digits", number)
            out[r] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) == ord("1")
        return out

    def int_rows(self, rows: int, width: int) -> np.ndarray:
        out = np.zeros((rows, width), dtype=np.int64)
        for r in range(rows):
            number = self.line_number
            try:
                values = [int(x) for x in self.next().split()]
            except ValueError:
                raise ParseError("expected integers", number) from None
            if len(values) != width:
                raise ParseError(f"expected {width} integers, got {len(values)}", number)
            out[r] = values
        return out


def parse_certificate(text: str) -> RadoCertificate:
    """
    Parse a RADO-CERT v1 block.

    Raises:
        ParseError: On malformed text or a certificate that fails validation.
    """
    reader = _Reader(text)
    number = reader.line_number
    if reader.next() != MAGIC:
        raise ParseError(f"certificate must start with {MAGIC!r}", number)
    kind = reader.keyword("KIND")
    if kind not in ("graph", "structure"):
        raise ParseError(f"unknown kind {kind!r}", reader.line_number - 1)
    number = reader.line_number
    n = reader.count("N")
    if n < 1:
        raise ParseError("certificate universe must be non-empty", number)
    k = reader.count("K")
    sig = None
    if kind == "structure":
        number = reader.line_number
        try:
            sig = Signature.parse_inline(reader.keyword("SIG"))
        except ValueError as e:
            raise ParseError(str(e), number) from e

    m = reader.count("TOURNAMENT")
    orient = reader.bit_rows(m, m)
    parts = reader.count("PARTS")
    bounds = reader.int_rows(parts, 2)
    if parts and (bounds[1:, 0] != bounds[:-1, 1]).any():
        raise ParseError("parts must be contiguous", reader.line_number - 1)
    starts = np.concatenate([bounds[:1, 0], bounds[:, 1]]) if parts else np.zeros(1, dtype=np.int64)

    fields = {}
    try:
        if kind == "graph":
            size = reader.count("UNIVERSAL")
            fields["universal"] = UniversalSet(n, k, reader.bit_rows(size, n))
        else:
            size = reader.count("PHF")
            funcs = np.zeros((size, n), dtype=np.int8)
            for r in range(size):
                number = reader.line_number
                line = reader.next()
                if len(line) != n or not line.isdigit():
                    raise ParseError(f"expected {n} digits", number)
                funcs[r] = np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0")
            fields["hash_family"] = PerfectHashFamily(n, k, funcs)
            closure = reader.int_rows(reader.count("CLOSURE"), k + 1)
            fields["closure_index"] = closure[:, 0]
            fields["closure_perm"] = closure[:, 1:]
            fields["sig"] = sig

        count = reader.count("PATTERN")
        pattern: List[int] = []
        while len(pattern) < count:
            number = reader.line_number
            try:
                pattern.extend(int(x) for x in reader.next().split())
            except ValueError:
                raise ParseError("expected pattern indices", number) from None
        if len(pattern) != count:
            raise ParseError(f"PATTERN declares {count} entries, found {len(pattern)}", reader.line_number - 1)
        number = reader.line_number
        if reader.next() != "END":
            raise ParseError("expected END", number)
        return RadoCertificate(
            kind=kind, n=n, k=k, tournament=Tournament(orient), part_starts=starts,
            pattern=np.array(pattern, dtype=np.int64), **fields,
        )
    except ParseError:
        raise
    except RadoforgeError as e:
        raise ParseError(f"invalid certificate: {e}", reader.line_number) from e


def save_certificate(cert: RadoCertificate, path: Path):
    Path(path).write_text(serialize_certificate(cert), encoding="utf-8", newline="\n")


def load_certificate(path: Path) -> RadoCertificate:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Certificate not found: {path}")
    return parse_certificate(path.read_text(encoding="utf-8"))
