"""Monte Carlo decoding sweeps and exhaustive small-instance checks."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Optional

import numpy as np

from . import decoders
from .graph_code import GraphCode, dimension, min_distance_small
from .local_code import MAX_ENUM_K, make_local_code
from .rng import SplitMix64, derive_seed, mix64
from .topology import sample_hypergraph


@dataclass
class SimConfig:
    code: str
    l: int
    m: int
    t: int
    seed: int
    trials: int = 1
    errors: Optional[int] = None
    error_frac: Optional[float] = None
    max_iters: Optional[int] = None
    s: int = 2

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if (self.errors is None) == (self.error_frac is None):
            raise ValueError("give exactly one of errors / error_frac")


def error_weight(cfg: SimConfig, N: int) -> int:
    w = cfg.errors if cfg.errors is not None else math.floor(cfg.error_frac * N)
    if not 0 <= w < N:
        raise ValueError(f"error weight {w} must lie in [0, N={N})")
    return w


_local = lru_cache(maxsize=8)(make_local_code)


def _decode_trial(cfg: SimConfig, index: int, instrument: bool = False):
    local = _local(cfg.code)
    seed = derive_seed(cfg.seed, index)
    H = sample_hypergraph(cfg.l, cfg.m, local.n, seed)
    C = GraphCode(H, local)
    w = error_weight(cfg, C.N)
    y = np.zeros(C.N, dtype=np.uint8)
    y[SplitMix64(mix64(seed ^ 0xE77)).sample(C.N, w)] = 1
    truth = np.zeros(C.N, dtype=np.uint8) if instrument else None
    if cfg.l == 2:
        res = decoders.algorithm_I(C, y, cfg.t, cfg.max_iters, truth=truth)
    else:
        res = decoders.algorithm_II(C, y, cfg.t, cfg.s, cfg.max_iters, truth=truth)
    return seed, w, res


def trace_trial(cfg: SimConfig, index: int) -> List[dict]:
    """Per-iteration error weights of one trial (for JSON-lines output)."""
    return _decode_trial(cfg, index, instrument=True)[2].trace


def run_trial(cfg: SimConfig, index: int) -> dict:
    seed, w, res = _decode_trial(cfg, index)
    list_size = 1 if cfg.l == 2 else len(res.candidates.final)
    return {"trial": index, "seed": seed, "errors": w, "success": not res.output.any(),
            "converged": res.converged, "iterations": res.iterations,
            "residual_weight": int(res.output.sum()), "list_size": list_size}


def _run_trial_args(args):
    return run_trial(*args)


def simulate(cfg: SimConfig, jobs: int = 1) -> dict:
    """Run seeded trials with the all-zero codeword transmitted.

    Trial i uses seed ``derive_seed(cfg.seed, i)`` for both the graph and the
    error pattern, so any trial can be replayed alone.
    """
    if cfg.t > _local(cfg.code).t_max:
        raise ValueError(f"t={cfg.t} exceeds t_max of {cfg.code}")
    args = [(cfg, i) for i in range(cfg.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            trials = list(ex.map(_run_trial_args, args))
    else:
        trials = [run_trial(cfg, i) for i in range(cfg.trials)]
    trials.sort(key=lambda r: r["trial"])
    succ = sum(r["success"] for r in trials)
    return {"config": asdict(cfg), "success_rate": succ / len(trials),
            "mean_iterations": sum(r["iterations"] for r in trials) / len(trials),
            "trials": trials}


def oracle(code: str, l: int, m: int, seed: int, t: int = 1, s: int = 2,
           max_pairs: int = 5000) -> dict:
    """Exact facts about one small sampled instance.

    Reports the dimension against the designed rate, the minimum distance
    when the code is small enough to enumerate, and the outcome of decoding
    every single error (and every double error when there are at most
    ``max_pairs`` pairs) with the all-zero word transmitted.
    """
    local = _local(code)
    H = sample_hypergraph(l, m, local.n, seed)
    C = GraphCode(H, local)
    k = dimension(C)
    out = {"code": code, "l": l, "m": m, "seed": seed, "N": C.N, "dimension": k,
           "rate_lower_bound_dim": max(0, math.ceil(C.N * C.rate_lower)),
           "min_distance": min_distance_small(C) if k <= MAX_ENUM_K else None}
    if t > local.t_max:
        return out

    def decode(y):
        if l == 2:
            return decoders.algorithm_I(C, y, t), None
        res = decoders.algorithm_II(C, y, t, s)
        listed = any(not w.any() for lev in res.candidates.levels for w in lev)
        listed = listed or any(not w.any() for w in res.candidates.final)
        return res, listed

    for weight in (1, 2):
        patterns = list(combinations(range(C.N), weight))
        if len(patterns) > max_pairs:
            continue
        ok = listed_ok = 0
        failures: List[List[int]] = []
        for supp in patterns:
            y = np.zeros(C.N, dtype=np.uint8)
            y[list(supp)] = 1
            res, listed = decode(y)
            if not res.output.any():
                ok += 1
            elif len(failures) < 10:
                failures.append(list(supp))
            listed_ok += bool(listed)
        rec = {"patterns": len(patterns), "decoded": ok, "failures": failures}
        if l > 2:
            rec["transmitted_in_list"] = listed_ok
        out[f"weight{weight}"] = rec
    return out
