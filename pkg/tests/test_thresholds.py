"""Threshold solvers against independent oracles.

Frozen numbers below were produced by the routines in ``oracles.py`` (zoomed
simplex grid search, plain-float closed form, plain bisection); rerun them
with ``pytest -m slow`` to regenerate the n = 9 grid values live.
"""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (F_bipartite_grid, bisect, g_objective, h2, hamming_closed_form, tilde_F_grid)
from tannercodes import thresholds as th

# (n, d0, gamma) -> grid-search maximum of g over the hypergraph region, t = 1
GRID_TILDE = {
    (7, 3, 0.02): 0.8797142892280869,
    (7, 3, 0.05): 1.8717282006815517,
    (7, 3, 0.1): 3.200247206113718,
    (7, 4, 0.02): 0.7666916531722439,
    (7, 4, 0.05): 1.6728800133782307,
    (7, 4, 0.1): 2.947478868410846,
    (9, 3, 0.02): 1.1545733392959052,
    (9, 3, 0.05): 2.4575329624999087,
    (9, 3, 0.1): 4.181122800685139,
    (9, 4, 0.02): 1.024105159922106,
    (9, 4, 0.05): 2.2417648792304687,
    (9, 4, 0.1): 3.9492407611525513,
}
GRID_BIPARTITE_7_2_01 = 3.1311806837596983
BISECT_L2_HALF = 0.156417354964272  # root of h(x)/x = 4


def test_entropy_values():
    assert th.h(0.5) == 1.0
    assert th.h(0.0) == th.h(1.0) == 0.0
    assert th.entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-15)
    assert th.entropy([1.0, 0.0]) == 0.0


@given(st.floats(1e-12, 1 - 1e-12))
def test_entropy_matches_reference(p):
    assert th.h(p) == pytest.approx(h2(p), abs=1e-12)


def test_log2_binom_no_overflow():
    lb = th.log2_binom(1023)
    assert np.isfinite(lb).all()
    assert lb[511] == pytest.approx(math.log2(math.comb(1023, 511)), rel=1e-12)


def test_F_bipartite_vanishes_at_zero():
    F, _ = th.F_bipartite(23, 3, 1e-12)
    assert 0 <= F < 1e-9


def test_F_bipartite_grid_oracle():
    F, _ = th.F_bipartite(7, 2, 0.1)
    assert F == pytest.approx(GRID_BIPARTITE_7_2_01, abs=1e-2)
    assert F == pytest.approx(GRID_BIPARTITE_7_2_01, abs=1e-9)
    # the moment-only maximiser Bin(7, 0.1) puts less than sigma mass above t,
    # so the inequality region attains its maximum on the equality face
    tail = sum(math.comb(7, i) * 0.1**i * 0.9 ** (7 - i) for i in range(3, 8))
    assert tail < 0.1


def test_F_bipartite_crossing_point():
    sigma = 0.0048586
    F, _ = th.F_bipartite(23, 3, sigma, check_unique=True)
    assert F == pytest.approx(22 * th.h(sigma), rel=1e-4)


def test_F_bipartite_rejects_bad_args():
    with pytest.raises(ValueError):
        th.F_bipartite(7, 7, 0.1)
    with pytest.raises(ValueError):
        th.F_bipartite(7, 2, 1.5)


def test_sigma0_values():
    r = th.sigma0_bipartite(23, 3)
    assert r.value == pytest.approx(0.0048586, abs=5e-5)
    assert r.value * 3 / 23 == pytest.approx(0.00063, abs=5e-6)
    assert r.residual <= 1e-9
    r = th.sigma0_bipartite(31, 2)
    assert r.value == pytest.approx(0.000035, abs=5e-6)
    assert r.value * 2 / 31 == pytest.approx(0.0000023, abs=2e-7)


@pytest.mark.parametrize("n", [7, 15, 31, 63, 23])
def test_sigma0_zero_for_single_error(n):
    assert th.sigma0_bipartite(n, 1).value == 0.0


def asym_condition(x, tau, n):
    eps = (1 + math.log2(n)) / n
    return (1 - x) * h2(x * (1 - tau) / (1 - x)) + x * h2(tau) + eps - h2(x)


def test_sigma0_asymptotic_monotone_in_n():
    vals = [th.sigma0_bipartite_asymptotic(n, 0.1).value for n in (1e3, 1e6, 1e9)]
    assert vals[0] <= vals[1] <= vals[2] <= 0.1
    assert vals[2] > 0.099


def test_sigma0_asymptotic_scan_oracle():
    xs = np.linspace(0, 0.1, 100_001)[1:-1]
    assert all(asym_condition(x, 0.1, 1e3) >= 0 for x in xs[::10])
    assert th.sigma0_bipartite_asymptotic(1e3, 0.1).value == 0.0
    # at n = 1e6 the condition holds on a window ending at the reported value
    v = th.sigma0_bipartite_asymptotic(1e6, 0.1).value
    holds = np.array([asym_condition(x, 0.1, 1e6) < 0 for x in xs])
    first_fail_after = xs[np.argmax(holds)] + 0
    idx = np.nonzero(holds)[0]
    end = xs[idx[np.nonzero(np.diff(idx) > 1)[0][0]]] if np.any(np.diff(idx) > 1) else xs[idx[-1]]
    assert first_fail_after < v
    assert v == pytest.approx(end, abs=2e-6)


@pytest.mark.parametrize("key", [k for k in GRID_TILDE if k[0] == 7])
def test_tilde_F_grid_oracle(key):
    n, d0, gamma = key
    assert th.tilde_F(n, 1, d0, gamma)[0] == pytest.approx(GRID_TILDE[key], abs=1e-2)


def test_tilde_F_grid_oracle_frozen_n9():
    for (n, d0, gamma), v in GRID_TILDE.items():
        assert th.tilde_F(n, 1, d0, gamma)[0] == pytest.approx(v, abs=1e-8)


@pytest.mark.slow
def test_tilde_F_grid_oracle_live_n9():
    for d0 in (3, 4):
        v, _ = tilde_F_grid(9, 1, d0, 0.05, points=7, tol=1e-7)
        assert th.tilde_F(9, 1, d0, 0.05)[0] == pytest.approx(v, abs=1e-2)


def test_F_bipartite_grid_oracle_live():
    v, _ = F_bipartite_grid(7, 2, 0.1)
    assert v == pytest.approx(GRID_BIPARTITE_7_2_01, abs=1e-9)


@pytest.mark.parametrize("n", [15, 31, 63])
@pytest.mark.parametrize("gamma", [0.001, 0.01, 0.05])
def test_tilde_F_closed_form(n, gamma):
    ref = hamming_closed_form(n, gamma)
    assert th.tilde_F(n, 1, 3, gamma)[0] == pytest.approx(ref, abs=1e-8)
    assert th.tilde_F_hamming(n, gamma)[0] == pytest.approx(ref, abs=1e-8)


def test_tilde_F_maximiser_feasible():
    value, z = th.tilde_F(31, 2, 5, 0.02)
    i = np.arange(32)
    assert z.sum() == pytest.approx(1, abs=1e-12)
    assert (z * i).sum() == pytest.approx(0.02 * 31, abs=1e-10)
    assert (z[:3] * i[:3]).sum() == pytest.approx(2 * z[3:].sum(), abs=1e-10)
    assert value == pytest.approx(g_objective(z, 31), abs=1e-9)


def test_tilde_F_small_gamma():
    assert th.tilde_F(31, 1, 3, 1e-9)[0] < 1e-6


def random_region_point(rng, n, gamma):
    """Random z in the t = 1, d0 = 3 region with all coordinates >= 0."""
    while True:
        hi = rng.uniform(0, 1, n - 2)
        hi *= rng.uniform(0, gamma * n) / max(float(((np.arange(3, n + 1) + 1) * hi).sum()), 1e-300)
        z2 = (gamma * n - ((np.arange(3, n + 1) + 1) * hi).sum()) / 3
        z1 = z2 + hi.sum()
        z0 = 1 - z1 - z2 - hi.sum()
        z = np.concatenate([[z0, z1, z2], hi])
        if (z >= 0).all():
            return z


def test_g_concave_on_region():
    rng = np.random.default_rng(0)
    for _ in range(300):
        z1 = random_region_point(rng, 15, 0.05)
        z2 = random_region_point(rng, 15, 0.05)
        lam = rng.uniform()
        mid = g_objective(lam * z1 + (1 - lam) * z2, 15)
        assert mid >= lam * g_objective(z1, 15) + (1 - lam) * g_objective(z2, 15) - 1e-12


def test_interval_bound_concave():
    rng = np.random.default_rng(1)
    gamma, tau = 0.003, 0.004
    pts = []
    while len(pts) < 400:
        lam, mu1, mu2 = rng.uniform(0, 1), rng.uniform(0, 0.003), rng.uniform(0, 0.003)
        mid = 1 - lam - mu1 / tau
        if (mu1 <= lam and mid > 0 and 0 <= gamma - mu1 - mu2 <= mid and mu2 * tau <= mu1):
            pts.append(np.array([lam, mu1, mu2]))
    f = lambda p: th.interval_entropy_bound(*p, gamma, tau)  # noqa: E731
    for a, b in zip(pts[::2], pts[1::2]):
        w = rng.uniform()
        assert f(w * a + (1 - w) * b) >= w * f(a) + (1 - w) * f(b) - 1e-12


def test_gamma0_hypergraph_values():
    r = th.gamma0_hypergraph(31, 1, 3, 5)
    assert r.value == pytest.approx(1.2e-5, rel=0.2)
    assert th.gamma0_hypergraph(127, 1, 3, 9).value == pytest.approx(0.0002012, rel=0.02)


@pytest.mark.slow
def test_gamma0_nondecreasing_in_l():
    vals = [th.gamma0_hypergraph(511, 1, 3, l).value for l in (17, 23, 28, 34, 40, 45, 51)]
    assert vals == sorted(vals)
    assert vals[0] == pytest.approx(0.000235, rel=0.02)


def test_delta_bound_table_cells():
    assert th.delta_bound(511, 3, 17).value == pytest.approx(0.00415, rel=0.02)
    assert th.delta_bound(1023, 3, 51).value == pytest.approx(0.003394, rel=0.02)


def test_delta_asymptotic_bisection_oracle():
    assert th.delta_asymptotic(2, 0.5).value == pytest.approx(BISECT_L2_HALF, abs=1e-12)
    ref = bisect(lambda x: h2(x) / x - 1.5 * h2(0.05) / 0.05, 1e-12, 0.5)
    assert th.delta_asymptotic(3, 0.05).value == pytest.approx(ref, rel=1e-9)


def test_delta_asymptotic_small_delta0():
    vals = [th.delta_asymptotic(3, d).value for d in (1e-2, 1e-4, 1e-6)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-6


def test_gamma0_asymptotic_tight_at_optimum():
    r = th.gamma0_asymptotic(10, 0.01)
    x = tau = r.value
    d = 0.01
    lhs = (1 - x / d) * h2(x * tau / (d - x)) + (x / d) * h2(d - tau)
    assert abs(lhs - 0.9 * h2(x)) < 1e-3
    assert r.value == pytest.approx(0.002198, rel=0.05)


def test_gamma0_asymptotic_eps_modes():
    zero = th.gamma0_asymptotic(3, 0.05).value
    slack = th.gamma0_asymptotic(3, 0.05, n=10**6, eps_mode="logn").value
    assert slack <= zero
    with pytest.raises(ValueError):
        th.gamma0_asymptotic(3, 0.05, eps_mode="logn")


def test_result_serialises():
    r = th.sigma0_bipartite(23, 3)
    d = json.loads(r.to_json())
    assert set(d) >= {"query", "value", "root", "residual", "method"}


def test_threshold_error_carries_diagnostics():
    err = th.ThresholdError("no bracket", n=7, t=2)
    assert err.diagnostics == {"n": 7, "t": 2}
