"""Iterative decoders for graph and hypergraph codes.

Both decoders are built from :func:`local_round`, which replaces the local
word at every vertex of one part by its bounded-distance decoding. All
vertices of the part read the same input word, so the result does not
depend on the order in which vertices are visited.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence

import numpy as np

from .graph_code import GraphCode, is_codeword
from .local_code import check_radius
from .topology import bipartite_restriction


@dataclass
class DecodeResult:
    output: np.ndarray
    converged: bool
    iterations: int
    trace: Optional[List[dict]] = None
    candidates: Optional["CandidateList"] = None


@dataclass
class CandidateList:
    """Candidate sets Y^(j) of the branching stage, after deduplication.

    ``pre_dedup_sizes[j]`` is the number of words produced by iteration j
    before duplicates are dropped; it never exceeds l**j.
    """

    levels: List[List[np.ndarray]] = field(default_factory=list)
    pre_dedup_sizes: List[int] = field(default_factory=list)
    final: List[np.ndarray] = field(default_factory=list)


@dataclass
class GoodBadSets:
    part: int
    good: np.ndarray
    bad: np.ndarray
    good_error_edges: int


def default_max_iters(m: int, c: float = 4.0) -> int:
    return math.ceil(c * math.log2(max(m, 2))) + 8


def local_round(C: GraphCode, u: np.ndarray, part: int, t: int) -> np.ndarray:
    """Decode every vertex of ``part`` from the same snapshot of ``u``."""
    if not 1 <= part <= C.l:
        raise IndexError(f"part {part} outside 1..{C.l}")
    slots = C.topology.slots[part - 1]
    out = np.array(u, dtype=np.uint8, copy=True)
    out[slots] = C.local.decode_block(out[slots], t)
    return out


def _weight_vs(u: np.ndarray, truth: Optional[np.ndarray]) -> Optional[int]:
    if truth is None:
        return None
    return int(np.count_nonzero(u != truth))


def algorithm_I(C: GraphCode, y, t: int, max_iters: Optional[int] = None,
                truth: Optional[np.ndarray] = None) -> DecodeResult:
    """Alternate local rounds on part 1 (odd iterations) and part 2 (even).

    Stops at a codeword, at the iteration cap, or when the word after a full
    odd+even round has been seen before (fixed point or cycle).
    """
    if C.l != 2:
        raise ValueError("Algorithm I needs a bipartite (l = 2) code")
    check_radius(C.local, t)
    if max_iters is None:
        max_iters = default_max_iters(C.topology.m)
    u = np.array(y, dtype=np.uint8, copy=True)
    trace = [] if truth is not None else None
    if trace is not None:
        trace.append({"iteration": 0, "part": 0, "error_weight": _weight_vs(u, truth), "list_size": 1})
    seen = {u.tobytes()}
    it = 0
    done = is_codeword(C, u)
    while not done and it < max_iters:
        it += 1
        part = 1 if it % 2 else 2
        u = local_round(C, u, part, t)
        if trace is not None:
            trace.append({"iteration": it, "part": part, "error_weight": _weight_vs(u, truth), "list_size": 1})
        if is_codeword(C, u):
            break
        if part == 2:
            key = u.tobytes()
            if key in seen:
                break
            seen.add(key)
    return DecodeResult(u, is_codeword(C, u), it, trace)


def select_closest(candidates: Sequence[np.ndarray], y, C: Optional[GraphCode] = None) -> np.ndarray:
    """Candidate nearest to ``y`` in Hamming distance.

    When ``C`` is given, codewords of C are preferred over non-codewords.
    Ties go to the lexicographically smallest bit vector.
    """
    if len(candidates) == 0:
        raise ValueError("no candidates to select from")
    y = np.asarray(y, dtype=np.uint8)
    pool = list(candidates)
    if C is not None:
        valid = [c for c in pool if is_codeword(C, c)]
        if valid:
            pool = valid
    return min(pool, key=lambda c: (int(np.count_nonzero(c != y)), np.asarray(c, dtype=np.uint8).tobytes()))


def algorithm_II(C: GraphCode, y, t: int, s: int, cleanup_iters: Optional[int] = None,
                 truth: Optional[np.ndarray] = None) -> DecodeResult:
    """Branching list decoder followed by bipartite cleanup and closest-word selection.

    For j = 1..s every candidate is passed through the subprocedure of each
    part, giving up to l**j words. Each surviving candidate is then decoded by
    Algorithm I on the graph formed by parts 1 and 2.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    check_radius(C.local, t)
    y = np.array(y, dtype=np.uint8, copy=True)
    trace = None
    if truth is not None:
        trace = [{"iteration": 0, "part": 0, "error_weight": _weight_vs(y, truth), "list_size": 1}]
    cands = CandidateList(levels=[[y]])
    level = [y]
    for j in range(1, s + 1):
        produced = []
        for u in level:
            for part in range(1, C.l + 1):
                w = local_round(C, u, part, t)
                produced.append(w)
                if trace is not None:
                    trace.append({"iteration": j, "part": part, "error_weight": _weight_vs(w, truth),
                                  "list_size": len(produced)})
        cands.pre_dedup_sizes.append(len(produced))
        level = _dedup(produced)
        cands.levels.append(level)

    bip = C if C.l == 2 else GraphCode(bipartite_restriction(C.topology, 1, 2), C.local)
    iters = s
    final = []
    for u in level:
        res = algorithm_I(bip, u, t, cleanup_iters)
        iters = max(iters, s + res.iterations)
        final.append(res.output)
    cands.final = _dedup(final)
    best = select_closest(cands.final, y, C)
    if trace is not None:
        trace.append({"iteration": iters, "part": 0, "error_weight": _weight_vs(best, truth),
                      "list_size": len(cands.final)})
    return DecodeResult(best, is_codeword(C, best), iters, trace, cands)


def _dedup(words: List[np.ndarray]) -> List[np.ndarray]:
    seen = set()
    out = []
    for w in words:
        key = w.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def error_counts(C: GraphCode, errors, part: int) -> np.ndarray:
    """|E(v) & errors| for every vertex v of ``part``."""
    e = np.zeros(C.N, dtype=np.int64)
    e[np.asarray(list(errors), dtype=np.int64)] = 1
    return e[C.topology.slots[part - 1]].sum(axis=1)


def good_bad_sets(C: GraphCode, errors, part: int, t: int) -> GoodBadSets:
    """Vertices with <= t error edges (good) and >= d0 - t error edges (bad)."""
    if t < 0 or C.local.d0 - t < 1:
        raise ValueError("need t >= 0 and d0 - t >= 1")
    cnt = error_counts(C, errors, part)
    good = np.nonzero(cnt <= t)[0]
    bad = np.nonzero(cnt >= C.local.d0 - t)[0]
    return GoodBadSets(part, good, bad, int(cnt[good].sum()))


def reduction_check(C: GraphCode, errors, t: int, eps: float):
    """Whether some part i has |E(G_i)| >= t|B_i| + eps*N; returns (holds, first such i)."""
    for part in range(1, C.l + 1):
        gb = good_bad_sets(C, errors, part, t)
        if gb.good_error_edges >= t * len(gb.bad) + eps * C.N:
            return True, part
    return False, None


def write_trace(trace: Sequence[dict], fh: IO[str]) -> None:
    """Emit a trace as JSON lines."""
    for rec in trace:
        fh.write(json.dumps(rec) + "\n")
