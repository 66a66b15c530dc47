"""
Canonical enumeration of k-atomic types.

An entry is (relation index, index tuple) over {0..k} with 0 present. The
canonical entry list is sorted by (relation index, index tuple); a type is
identified by its code, bit e set when entry e belongs to it, and types are
enumerated by code ascending.
"""

from itertools import product
from typing import Dict, List

from core.errors import CapacityError
from core.models import AtomicEntry, AtomicType, Signature

MAX_TYPE_BITS = 40


def atomic_type_entries(sig: Signature, k: int) -> List[AtomicEntry]:
    """All entries any k-atomic type over sig may contain, in canonical order."""
    entries: List[AtomicEntry] = []
    for i, a in enumerate(sig.arities):
        for idx in product(range(k + 1), repeat=a):
            if 0 in idx:
                entries.append((i, idx))
    return entries


def entry_count(sig: Signature, k: int) -> int:
    """sum over relations of (k+1)^a - k^a."""
    return sum((k + 1) ** a - k ** a for a in sig.arities)


def type_count(sig: Signature, k: int) -> int:
    """|types(sig, k)| = 2^entry_count."""
    bits = entry_count(sig, k)
    if bits > MAX_TYPE_BITS:
        raise CapacityError(f"2^{bits} atomic types is beyond enumeration")
    return 1 << bits


def atomic_type_from_code(sig: Signature, k: int, code: int) -> AtomicType:
    entries = atomic_type_entries(sig, k)
    return AtomicType(k=k, entries=frozenset(e for bit, e in enumerate(entries) if code >> bit & 1))


def code_of_atomic_type(sig: Signature, t: AtomicType) -> int:
    t.validate_against(sig)
    position: Dict[AtomicEntry, int] = {e: bit for bit, e in enumerate(atomic_type_entries(sig, t.k))}
    return sum(1 << position[e] for e in t.entries)
