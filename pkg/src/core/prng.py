"""
Seeded, splittable pseudorandom number source.

A Prng is identified by (seed, stream). Two instances with the same pair
produce the same sequence; distinct streams are independent PCG64 streams
derived through numpy's SeedSequence spawn keys.
"""

from typing import Optional

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One SplitMix64 output step, used to derive child stream ids."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Prng:
    """
    Reproducible random source.

    The underlying generator is created lazily and advances as it is used,
    so pass a fresh Prng (or a child) whenever an operation must be
    replayable in isolation.
    """

    def __init__(self, seed: int = 0, stream: int = 0):
        if not 0 <= seed <= MASK64 or not 0 <= stream <= MASK64:
            raise ValueError("seed and stream must be 64-bit unsigned integers")
        self.seed = int(seed)
        self.stream = int(stream)
        self._generator: Optional[np.random.Generator] = None

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
            self._generator = np.random.Generator(np.random.PCG64(seq))
        return self._generator

    def child(self, index: int) -> "Prng":
        """Independent stream for sub-task `index` (trial, part, ...)."""
        return Prng(self.seed, splitmix64(self.stream ^ splitmix64(index & MASK64)))

    def fresh(self) -> "Prng":
        """Same (seed, stream), rewound to the start of the sequence."""
        return Prng(self.seed, self.stream)

    def bits(self, size) -> np.ndarray:
        """Independent fair bits as a boolean array."""
        return self.generator.random(size) < 0.5

    def __repr__(self) -> str:
        return f"Prng(seed={self.seed}, stream={self.stream})"
