"""The global code: edge labellings whose projection at every vertex is a local codeword."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from . import gf2
from .local_code import MAX_ENUM_K, BinaryLinearCode
from .rng import SplitMix64
from .topology import RegularHypergraph

MAX_DENSE_N = 10_000


@dataclass(eq=False)
class GraphCode:
    topology: RegularHypergraph
    local: BinaryLinearCode
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.local.n != self.topology.n:
            raise ValueError(f"local code length {self.local.n} != graph degree {self.topology.n}")

    @property
    def N(self) -> int:
        return self.topology.N

    @property
    def l(self) -> int:
        return self.topology.l

    @property
    def rate_lower(self) -> Fraction:
        """Designed rate l*R0 - (l-1)."""
        l = self.topology.l
        return l * Fraction(self.local.k, self.local.n) - (l - 1)

    def project(self, x: np.ndarray, part: int) -> np.ndarray:
        """(m, n) array of local words seen by the vertices of ``part``."""
        return np.asarray(x)[self.topology.slots[part - 1]]

    def parity_rows(self) -> List[int]:
        """Local parity rows lifted to length N, one per (part, vertex, row)."""
        if "rows" not in self._cache:
            rows = []
            hloc = [np.nonzero(h)[0] for h in self.local.parity_check]
            for slots in self.topology.slots:
                for edges in slots:
                    for supp in hloc:
                        r = 0
                        for e in edges[supp]:
                            r ^= 1 << int(e)
                        rows.append(r)
            self._cache["rows"] = rows
        return self._cache["rows"]

    def _nullspace(self) -> List[int]:
        if self.N > MAX_DENSE_N:
            raise ValueError(f"N={self.N} exceeds dense GF(2) limit {MAX_DENSE_N}")
        if "null" not in self._cache:
            self._cache["null"] = gf2.nullspace(self.parity_rows(), self.N)
        return self._cache["null"]


def is_codeword(C: GraphCode, x) -> bool:
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (C.N,):
        return False
    if C.local.r == 0:
        return True
    return all(not C.local.syndromes(C.project(x, p)).any() for p in range(1, C.l + 1))


def dimension(C: GraphCode) -> int:
    return len(C._nullspace())


def enumerate_codewords(C: GraphCode) -> np.ndarray:
    """Every codeword of C as a (2^dim, N) bit array."""
    basis = C._nullspace()
    if len(basis) > MAX_ENUM_K:
        raise ValueError(f"dimension {len(basis)} too large to enumerate (limit {MAX_ENUM_K})")
    return np.stack([gf2.unpack_bits(int(w), C.N) for w in gf2.span(basis)])


def min_distance_small(C: GraphCode) -> int:
    """Minimum nonzero weight; N + 1 when C = {0}."""
    basis = C._nullspace()
    if len(basis) > MAX_ENUM_K:
        raise ValueError(f"dimension {len(basis)} too large to enumerate (limit {MAX_ENUM_K})")
    if not basis:
        return C.N + 1
    return min(int(w).bit_count() for w in gf2.span(basis)[1:])


def random_codeword(C: GraphCode, seed: int) -> np.ndarray:
    basis = C._nullspace()
    coeffs = SplitMix64(seed).bits(len(basis))
    w = 0
    for c, b in zip(coeffs, basis):
        if c:
            w ^= b
    return gf2.unpack_bits(w, C.N)
