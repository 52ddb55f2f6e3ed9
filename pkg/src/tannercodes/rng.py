"""Deterministic 64-bit generator used for every randomized structure.

SplitMix64 (Steele, Lea, Flood 2014). Kept in pure Python so that sampled
graphs are identical on every platform and numpy version.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base: int, index: int) -> int:
    """Per-trial seed: independent of any shared stream."""
    return mix64((base & MASK64) ^ mix64((index + 1) * GOLDEN))


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def permutation(self, size: int) -> np.ndarray:
        """Fisher-Yates shuffle of range(size)."""
        p = list(range(size))
        for i in range(size - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return np.array(p, dtype=np.int64)

    def sample(self, population: int, k: int) -> np.ndarray:
        """k distinct values from range(population), sorted (partial Fisher-Yates)."""
        if not 0 <= k <= population:
            raise ValueError("sample size out of range")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(population - i)
            vi, vj = swapped.get(i, i), swapped.get(j, j)
            swapped[j] = vi
            out.append(vj)
        return np.array(sorted(out), dtype=np.int64)

    def bits(self, count: int) -> np.ndarray:
        out = np.empty(count, dtype=np.uint8)
        word = 0
        for i in range(count):
            if i % 64 == 0:
                word = self.next_u64()
            out[i] = (word >> (i % 64)) & 1
        return out
