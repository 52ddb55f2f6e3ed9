"""Binary linear local codes A[n, k, d0] and the bounded-distance decoder psi_{A,t}."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np

from . import gf2
from .rng import SplitMix64

MAX_ENUM_K = 22
_DENSE_SYNDROME_BITS = 22
_SAMPLE_TRIALS = 10_000


class CodeError(ValueError):
    """Malformed or inconsistent code description."""


@dataclass(frozen=True, eq=False)
class BinaryLinearCode:
    """Local code with generator, parity checks and a syndrome table.

    ``coset_leaders`` maps a syndrome (bit b = parity row b) to the bitset of
    the minimum-weight error pattern with that syndrome, for all patterns of
    weight <= ``t_max``.
    """

    name: str
    n: int
    k: int
    d0: int
    generator: np.ndarray
    parity_check: np.ndarray
    coset_leaders: Dict[int, int] = field(repr=False)
    _leader_pos: np.ndarray = field(repr=False)
    _leader_weight: np.ndarray = field(repr=False)
    _leader_id: Optional[np.ndarray] = field(repr=False)

    @property
    def t_max(self) -> int:
        return (self.d0 - 1) // 2

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def r(self) -> int:
        return self.n - self.k

    def syndromes(self, words: np.ndarray) -> np.ndarray:
        """Integer syndromes of the rows of ``words`` (shape (..., n))."""
        s = (np.asarray(words, dtype=np.int64) @ self.parity_check.T.astype(np.int64)) & 1
        weights = np.int64(1) << np.arange(self.r, dtype=np.int64)
        return s @ weights

    def decode_block(self, words: np.ndarray, t: int) -> np.ndarray:
        """Apply psi_{A,t} to every row of an (m, n) bit array."""
        check_radius(self, t)
        words = np.asarray(words, dtype=np.uint8)
        out = words.copy()
        if t == 0 or self.r == 0 or words.size == 0:
            return out
        syn = self.syndromes(words)
        if self._leader_id is not None:
            lid = self._leader_id[syn]
        else:
            lookup = {s: i for i, s in enumerate(self.coset_leaders)}
            lid = np.array([lookup.get(int(s), -1) for s in syn], dtype=np.int64)
        ok = lid >= 0
        w = np.where(ok, self._leader_weight[np.maximum(lid, 0)], 0)
        fix = ok & (w > 0) & (w <= t)
        rows = np.nonzero(fix)[0]
        if rows.size:
            pos = self._leader_pos[lid[rows]]
            rr = np.repeat(rows, pos.shape[1])
            pp = pos.ravel()
            keep = pp >= 0
            out[rr[keep], pp[keep]] ^= 1
        return out


def check_radius(code: BinaryLinearCode, t: int) -> None:
    if t < 0 or t > code.t_max:
        raise CodeError(f"decode radius t={t} outside [0, {code.t_max}] for {code.name}")


def _build_leaders(parity_rows: Sequence[int], n: int, t_max: int):
    leaders: Dict[int, int] = {}
    positions = []
    weights = []
    for w in range(t_max + 1):
        for supp in combinations(range(n), w):
            e = 0
            for j in supp:
                e |= 1 << j
            s = 0
            for b, h in enumerate(parity_rows):
                if gf2.dot(h, e):
                    s |= 1 << b
            if s in leaders:
                continue
            leaders[s] = e
            positions.append(list(supp) + [-1] * (t_max - w))
            weights.append(w)
    pos = np.array(positions, dtype=np.int64).reshape(len(leaders), max(t_max, 0))
    r = len(parity_rows)
    dense = None
    if r <= _DENSE_SYNDROME_BITS:
        dense = np.full(1 << r, -1, dtype=np.int64)
        for i, s in enumerate(leaders):
            dense[s] = i
    return leaders, pos, np.array(weights, dtype=np.int64), dense


def min_distance_bruteforce(code: BinaryLinearCode) -> int:
    """Minimum nonzero codeword weight by enumerating all 2^k codewords."""
    return _min_weight(gf2.pack_matrix(code.generator), code.n)


def _min_weight(gen_rows: Sequence[int], n: int) -> int:
    k = len(gen_rows)
    if k > MAX_ENUM_K:
        raise CodeError(f"k={k} too large for exhaustive distance (limit {MAX_ENUM_K})")
    if k == 0:
        return n + 1
    if n <= 63:
        words = gf2.span_small(gen_rows)
        return int(gf2.popcount(words[1:]).min())
    return min(int(w).bit_count() for w in gf2.span(gen_rows)[1:])


def from_parity_check(H: np.ndarray, name: str, design_d0: Optional[int] = None) -> BinaryLinearCode:
    """Build a code from a full-rank parity-check matrix.

    d0 is computed exhaustively when k <= 22; otherwise ``design_d0`` is
    required and is checked against 10^4 random codewords.
    """
    H = np.asarray(H, dtype=np.uint8) % 2
    if H.ndim != 2:
        raise CodeError("parity-check matrix must be 2-dimensional")
    n = H.shape[1]
    hrows = gf2.pack_matrix(H)
    if gf2.rank(hrows, n) != len(hrows):
        raise CodeError(f"{name}: parity-check matrix is rank deficient")
    grows = gf2.nullspace(hrows, n)
    k = len(grows)
    if k <= MAX_ENUM_K:
        d0 = _min_weight(grows, n)
        if design_d0 is not None and d0 != design_d0:
            raise CodeError(f"{name}: declared d0={design_d0} but minimum weight is {d0}")
    else:
        if design_d0 is None:
            raise CodeError(f"{name}: k={k} too large to compute d0; a design value is required")
        d0 = design_d0
        _sample_distance_check(grows, n, d0, name)
    if k == 0:
        d0 = n + 1  # trivial code; every word of weight <= n decodes to 0
    G = gf2.unpack_matrix(grows, n)
    leaders, pos, weights, dense = _build_leaders(hrows, n, (min(d0, n + 1) - 1) // 2)
    return BinaryLinearCode(name, n, k, d0, G, H, leaders, pos, weights, dense)


def _sample_distance_check(grows: Sequence[int], n: int, d0: int, name: str) -> None:
    rng = SplitMix64(0x5EED ^ n)
    for _ in range(_SAMPLE_TRIALS):
        mask = rng.next_u64() | (rng.next_u64() << 64)
        w = 0
        for i, g in enumerate(grows):
            if (mask >> (i % 128)) & 1:
                w ^= g
        if w and w.bit_count() < d0:
            raise CodeError(f"{name}: codeword of weight {w.bit_count()} contradicts d0={d0}")


def from_generator(G: np.ndarray, name: str, design_d0: Optional[int] = None) -> BinaryLinearCode:
    G = np.asarray(G, dtype=np.uint8) % 2
    n = G.shape[1]
    grows = gf2.pack_matrix(G)
    if gf2.rank(grows, n) != len(grows):
        raise CodeError(f"{name}: generator matrix is rank deficient")
    H = gf2.unpack_matrix(gf2.nullspace(grows, n), n)
    return from_parity_check(H, name, design_d0)


def hamming(r: int) -> BinaryLinearCode:
    """[2^r - 1, 2^r - 1 - r, 3] Hamming code; column j of H is j + 1 in binary."""
    if r < 3:
        raise CodeError("hamming(r) needs r >= 3")
    n = (1 << r) - 1
    cols = np.arange(1, n + 1)
    H = ((cols[None, :] >> np.arange(r)[:, None]) & 1).astype(np.uint8)
    return from_parity_check(H, f"hamming({r})", 3)


def _cyclic_generator(poly: int, n: int) -> np.ndarray:
    deg = poly.bit_length() - 1
    k = n - deg
    return gf2.unpack_matrix([poly << i for i in range(k)], n)


def golay23() -> BinaryLinearCode:
    # g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
    return from_generator(_cyclic_generator(0b110001110101, 23), "golay23", 7)


def _gf2m_tables(m: int, prim: int):
    size = 1 << m
    exp = [0] * (2 * size)
    log = [0] * size
    x = 1
    for i in range(size - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & size:
            x ^= prim
    for i in range(size - 1, 2 * size):
        exp[i] = exp[i - (size - 1)]
    return exp, log


def minimal_polynomial(power: int, m: int, prim: int) -> int:
    """Minimal polynomial over GF(2) of alpha^power in GF(2^m), as a bitset."""
    exp, log = _gf2m_tables(m, prim)
    order = (1 << m) - 1
    coset = []
    e = power % order
    while e not in coset:
        coset.append(e)
        e = (2 * e) % order
    # multiply out prod (x - alpha^e) with coefficients in GF(2^m)
    coeffs = [1]
    for e in coset:
        root = exp[e]
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            if c:
                nxt[i] ^= exp[log[c] + log[root]]
        coeffs = nxt
    if any(c not in (0, 1) for c in coeffs):
        raise CodeError("minimal polynomial has coefficients outside GF(2)")
    return gf2.pack_bits(coeffs)


def _polymul2(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def bch_31_21() -> BinaryLinearCode:
    """Narrow-sense double-error-correcting BCH code of length 31."""
    prim = 0b100101  # x^5 + x^2 + 1
    g = _polymul2(minimal_polynomial(1, 5, prim), minimal_polynomial(3, 5, prim))
    return from_generator(_cyclic_generator(g, 31), "bch_31_21", 5)


def spc(n: int) -> BinaryLinearCode:
    if n < 2:
        raise CodeError("spc(n) needs n >= 2")
    return from_parity_check(np.ones((1, n), dtype=np.uint8), f"spc({n})", 2)


def repetition(n: int) -> BinaryLinearCode:
    if n < 2:
        raise CodeError("repetition(n) needs n >= 2")
    H = np.zeros((n - 1, n), dtype=np.uint8)
    H[:, 0] = 1
    H[np.arange(n - 1), np.arange(1, n)] = 1
    return from_parity_check(H, f"repetition({n})", n)


def full_space(n: int) -> BinaryLinearCode:
    """The unconstrained code {0,1}^n (no parity checks, d0 = 1)."""
    H = np.zeros((0, n), dtype=np.uint8)
    grows = [1 << j for j in range(n)]
    return BinaryLinearCode(f"full({n})", n, n, 1, gf2.unpack_matrix(grows, n), H,
                            {0: 0}, np.zeros((1, 0), dtype=np.int64),
                            np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))


def read_parity_check(path) -> BinaryLinearCode:
    """Parse the text format: ``n k`` then n-k rows of n characters from {0,1}."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise CodeError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise CodeError(f"{path}: first line must be 'n k'")
    n, k = int(head[0]), int(head[1])
    if not 0 <= k <= n:
        raise CodeError(f"{path}: need 0 <= k <= n")
    rows = lines[1:]
    if len(rows) != n - k:
        raise CodeError(f"{path}: expected {n - k} parity rows, found {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != n or not re.fullmatch(r"[01]+", row):
            raise CodeError(f"{path}: row {i + 1} must be exactly {n} characters from {{0,1}}")
    if n == k:
        return full_space(n)
    H = np.array([[int(c) for c in row] for row in rows], dtype=np.uint8)
    return from_parity_check(H, Path(path).stem)


def write_parity_check(code: BinaryLinearCode, path) -> None:
    lines = [f"{code.n} {code.k}"]
    lines += ["".join(str(int(b)) for b in row) for row in code.parity_check]
    Path(path).write_text("\n".join(lines) + "\n")


_KIND = re.compile(r"^(hamming|spc|repetition|full)\((\d+)\)$")


def make_local_code(kind: str) -> BinaryLinearCode:
    """Construct a local code from a short description.

    Accepted: ``hamming(r)``, ``golay23``, ``bch_31_21``, ``spc(n)``,
    ``repetition(n)``, ``full(n)`` or ``file:PATH``.
    """
    kind = kind.strip()
    if kind == "golay23":
        return golay23()
    if kind == "bch_31_21":
        return bch_31_21()
    if kind.startswith("file:"):
        return read_parity_check(kind[5:])
    m = _KIND.match(kind)
    if not m:
        raise CodeError(f"unknown local code {kind!r}")
    builder = {"hamming": hamming, "spc": spc, "repetition": repetition, "full": full_space}[m.group(1)]
    return builder(int(m.group(2)))


def encode(code: BinaryLinearCode, msg) -> np.ndarray:
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape != (code.k,):
        raise ValueError(f"message length {msg.shape} != k={code.k}")
    return ((msg @ code.generator.astype(np.int64)) & 1).astype(np.uint8)


def bounded_distance_decode(code: BinaryLinearCode, z, t: int) -> np.ndarray:
    """psi_{A,t}: the unique codeword within distance t of ``z``, else ``z`` itself."""
    z = np.asarray(z, dtype=np.uint8)
    if z.shape != (code.n,):
        raise ValueError(f"word length {z.shape} != n={code.n}")
    return code.decode_block(z[None, :], t)[0]


def is_local_codeword(code: BinaryLinearCode, z) -> bool:
    return code.r == 0 or int(code.syndromes(np.asarray(z)[None, :])[0]) == 0


def codewords(code: BinaryLinearCode) -> np.ndarray:
    """All 2^k codewords as an (2^k, n) bit array (k <= 22)."""
    if code.k > MAX_ENUM_K:
        raise CodeError("too many codewords to enumerate")
    ints = gf2.span(gf2.pack_matrix(code.generator))
    return np.stack([gf2.unpack_bits(int(w), code.n) for w in ints])
