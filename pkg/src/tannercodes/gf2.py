"""GF(2) linear algebra on rows stored as Python int bitsets (bit j = column j)."""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

import numpy as np


def pack_bits(bits: Iterable[int]) -> int:
    row = 0
    for j, b in enumerate(bits):
        if b:
            row |= 1 << j
    return row


def unpack_bits(row: int, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.uint8)
    j = 0
    while row:
        if row & 1:
            out[j] = 1
        row >>= 1
        j += 1
    return out


def pack_matrix(mat: np.ndarray) -> List[int]:
    return [pack_bits(r) for r in np.asarray(mat)]


def unpack_matrix(rows: Sequence[int], n: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, n), dtype=np.uint8)
    return np.stack([unpack_bits(r, n) for r in rows])


def rref(rows: Sequence[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form.

    Returns the nonzero reduced rows and their pivot columns, both in
    increasing pivot order.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        # reduce against existing pivots, lowest column first
        for col in sorted(pivots):
            if (r >> col) & 1:
                r ^= pivots[col]
        if r == 0:
            continue
        col = (r & -r).bit_length() - 1
        for c, p in pivots.items():
            if (p >> col) & 1:
                pivots[c] = p ^ r
        pivots[col] = r
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def rank(rows: Sequence[int], n_cols: int) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


def nullspace(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of {x : row . x = 0 for every row}, as bitsets."""
    red, piv = rref(rows, n_cols)
    pivset = set(piv)
    basis = []
    for f in range(n_cols):
        if f in pivset:
            continue
        v = 1 << f
        for r, c in zip(red, piv):
            if (r >> f) & 1:
                v |= 1 << c
        basis.append(v)
    return basis


def span(basis: Sequence[int]) -> np.ndarray:
    """All 2^k combinations of ``basis`` (object array of Python ints)."""
    words = np.zeros(1, dtype=object)
    for b in basis:
        words = np.concatenate([words, words ^ b])
    return words


def span_small(basis: Sequence[int]) -> np.ndarray:
    """Like :func:`span` but in int64 for codes of length <= 63."""
    words = np.zeros(1, dtype=np.int64)
    for b in basis:
        words = np.concatenate([words, words ^ np.int64(b)])
    return words


def popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words)


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1
