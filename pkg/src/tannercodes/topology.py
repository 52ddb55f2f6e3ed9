"""Random l-partite n-regular hypergraphs from the permutation model.

Edges are numbered 0..N-1 with N = n*m. In part i an edge e sits at position
``attach[i][e]``: vertex ``attach[i][e] // n``, local slot ``attach[i][e] % n``.
Sampled structures use the identity for part 1 and l-1 independent uniform
permutations for the remaining parts. Parallel edges are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .rng import SplitMix64


@dataclass(frozen=True, eq=False)
class RegularHypergraph:
    l: int
    m: int
    n: int
    seed: int
    attach: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.l < 2 or self.m < 1 or self.n < 1:
            raise ValueError("need l >= 2, m >= 1, n >= 1")
        if len(self.attach) != self.l:
            raise ValueError("one attachment permutation per part required")
        N = self.N
        for p in self.attach:
            if p.shape != (N,) or not np.array_equal(np.sort(p), np.arange(N)):
                raise ValueError("attachment is not a permutation of range(N)")
        # slots[i] is the (m, n) table of edge ids; the inverse of attach[i]
        slots = []
        for p in self.attach:
            inv = np.empty(N, dtype=np.int64)
            inv[p] = np.arange(N)
            inv.setflags(write=False)
            slots.append(inv.reshape(self.m, self.n))
        object.__setattr__(self, "slots", tuple(slots))

    @property
    def N(self) -> int:
        return self.n * self.m

    @property
    def perms(self) -> List[np.ndarray]:
        """The l-1 permutations placing edges in parts 2..l."""
        return list(self.attach[1:])

    def vertex_of(self, part: int, edges) -> np.ndarray:
        """Vertex index (within ``part``, 1-based part) of each edge."""
        return self.attach[part - 1][np.asarray(edges)] // self.n

    def __eq__(self, other):
        return (isinstance(other, RegularHypergraph)
                and (self.l, self.m, self.n) == (other.l, other.m, other.n)
                and all(np.array_equal(a, b) for a, b in zip(self.attach, other.attach)))

    __hash__ = None


def from_permutations(l: int, m: int, n: int, perms: Sequence[Sequence[int]], seed: int = 0) -> RegularHypergraph:
    """Build from l-1 explicit permutations; part 1 is the identity."""
    if len(perms) != l - 1:
        raise ValueError(f"expected {l - 1} permutations, got {len(perms)}")
    ident = np.arange(n * m, dtype=np.int64)
    return RegularHypergraph(l, m, n, seed, (ident,) + tuple(np.asarray(p, dtype=np.int64) for p in perms))


def sample_hypergraph(l: int, m: int, n: int, seed: int) -> RegularHypergraph:
    rng = SplitMix64(seed)
    perms = [rng.permutation(n * m) for _ in range(l - 1)]
    return from_permutations(l, m, n, perms, seed)


def _check_part(H: RegularHypergraph, part: int) -> None:
    if not 1 <= part <= H.l:
        raise IndexError(f"part {part} outside 1..{H.l}")


def incident_edges(H: RegularHypergraph, part: int, vertex: int) -> np.ndarray:
    """The n edges at ``vertex`` of ``part``, in local-slot order."""
    _check_part(H, part)
    if not 0 <= vertex < H.m:
        raise IndexError(f"vertex {vertex} outside 0..{H.m - 1}")
    return H.slots[part - 1][vertex]


def bipartite_restriction(H: RegularHypergraph, i: int, j: int) -> RegularHypergraph:
    """Keep parts i and j only, with edge ids unchanged.

    Part i of H becomes part 1 of the result and part j becomes part 2.
    """
    _check_part(H, i)
    _check_part(H, j)
    if i == j:
        raise ValueError("restriction needs two distinct parts")
    return RegularHypergraph(2, H.m, H.n, H.seed, (H.attach[i - 1], H.attach[j - 1]))


def s_degrees(H: RegularHypergraph, S_part: int, S, part: int) -> np.ndarray:
    """deg_S(v) for every vertex v of ``part``, S a vertex set of ``S_part``."""
    _check_part(H, S_part)
    _check_part(H, part)
    S = np.asarray(sorted(set(int(s) for s in S)), dtype=np.int64)
    if S.size and (S.min() < 0 or S.max() >= H.m):
        raise IndexError("vertex of S out of range")
    if S.size == 0:
        return np.zeros(H.m, dtype=np.int64)
    edges = H.slots[S_part - 1][S].ravel()
    return np.bincount(H.vertex_of(part, edges), minlength=H.m)


def s_degree_stats(H: RegularHypergraph, S_part: int, S, r: int, part: int = None):
    """(deg_S per vertex, T_r(S)) with T_r(S) = {v : deg_S(v) >= r + 1}.

    Statistics are taken on ``part`` (default: the other side of a bipartite
    graph).
    """
    if not 0 <= r < H.n:
        raise ValueError(f"r={r} outside 0..{H.n - 1}")
    if part is None:
        if H.l != 2:
            raise ValueError("part must be given when l > 2")
        part = 3 - S_part
    deg = s_degrees(H, S_part, S, part)
    return deg, np.nonzero(deg >= r + 1)[0]


def dump(H: RegularHypergraph, path) -> None:
    """Write the header and the l-1 permutations; part 1 must be the identity."""
    if not np.array_equal(H.attach[0], np.arange(H.N)):
        raise ValueError("dump format assumes the identity on part 1")
    lines = [f"{H.l} {H.m} {H.n} {H.seed}"]
    lines += [" ".join(map(str, p.tolist())) for p in H.perms]
    Path(path).write_text("\n".join(lines) + "\n")


def load(path) -> RegularHypergraph:
    lines = Path(path).read_text().splitlines()
    l, m, n, seed = (int(x) for x in lines[0].split())
    perms = [[int(x) for x in ln.split()] for ln in lines[1:l]]
    return from_permutations(l, m, n, perms, seed)
