"""
Small exact combinatorics shared by the checkers and builders.
"""

from itertools import chain, combinations
from math import comb, prod
from typing import Dict, List, Tuple

import numpy as np


def combinations_array(n: int, k: int) -> np.ndarray:
    """
    All k-subsets of range(n) as rows of an int64 array, lexicographic order.

    Args:
        n: Ground set size.
        k: Subset size (0 gives a single empty row).

    Returns:
        np.ndarray: Shape (C(n, k), k).
    """
    if k < 0 or k > n:
        return np.zeros((0, max(k, 0)), dtype=np.int64)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if k == 1:
        return np.arange(n, dtype=np.int64).reshape(-1, 1)
    if k == 2:
        rows, cols = np.triu_indices(n, 1)
        return np.stack([rows, cols], axis=1).astype(np.int64)
    count = comb(n, k)
    flat = np.fromiter(chain.from_iterable(combinations(range(n), k)), dtype=np.int64, count=count * k)
    return flat.reshape(count, k)


def falling_factorial(n: int, k: int) -> int:
    """(n)_k = n (n-1) ... (n-k+1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return prod(range(n - k + 1, n + 1)) if k <= n else 0


def restricted_growth_strings(a: int) -> List[Tuple[int, ...]]:
    """
    Set partitions of {0..a-1} as restricted growth strings, lexicographic.

    Position j holds the class of j; classes are numbered by first
    occurrence, so the string starts with 0 and never jumps by more than one
    above the running maximum.
    """
    if a < 1:
        return [()]
    out: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], top: int):
        if len(prefix) == a:
            out.append(tuple(prefix))
            return
        for c in range(top + 2):
            prefix.append(c)
            extend(prefix, max(top, c))
            prefix.pop()

    extend([0], 0)
    return out


def rgs_by_class_count(a: int) -> Dict[int, List[Tuple[int, ...]]]:
    """restricted_growth_strings(a) grouped by number of classes, order preserved."""
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for rgs in restricted_growth_strings(a):
        groups.setdefault(max(rgs) + 1, []).append(rgs)
    return groups


def word_count(n: int) -> int:
    """64-bit machine words needed for an n-bit row."""
    return max(1, -(-n // 64))
