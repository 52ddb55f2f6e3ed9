"""Ensemble thresholds for graph and hypergraph codes.

All logarithms are base 2. Sums of the form sum_i C(n, i) x^i are handled
through log2-weights ``lb[i] + i*u`` with ``u = log2 x`` so that n in the
thousands neither overflows nor underflows.

Threshold definitions of the form ``sup{x : condition holds on (0, x]}`` are
evaluated by scanning a logarithmic grid upward from ``SCAN_FLOOR`` to the
first violation and bisecting the bracketing cell.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammaln, logsumexp

LN2 = math.log(2.0)
SCAN_FLOOR = 1e-9
ROOT_XTOL = 1e-15
ROOT_RTOL = 4 * np.finfo(float).eps


class ThresholdError(RuntimeError):
    """A root could not be bracketed or a solver failed to converge."""

    def __init__(self, msg: str, **diagnostics):
        super().__init__(msg)
        self.diagnostics = diagnostics


@dataclass
class ThresholdResult:
    value: float
    root: object
    residual: float
    method: str
    query: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


# ---------------------------------------------------------------------------
# entropy and log-domain helpers


def h(p: float) -> float:
    """Binary entropy in bits, h(0) = h(1) = 0."""
    if p <= 0.0 or p >= 1.0:
        if p < 0.0 or p > 1.0:
            raise ValueError(f"probability {p} outside [0, 1]")
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def entropy(z) -> float:
    """Entropy in bits of a probability vector, or binary entropy of a scalar."""
    if np.ndim(z) == 0:
        return h(float(z))
    z = np.asarray(z, dtype=float)
    if np.any(z < -1e-15) or abs(z.sum() - 1.0) > 1e-12:
        raise ValueError("not a probability vector")
    nz = z[z > 0]
    return float(-(nz * np.log2(nz)).sum())


def log2_binom(n: int) -> np.ndarray:
    """log2 C(n, i) for i = 0..n."""
    i = np.arange(n + 1)
    return (gammaln(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)) / LN2


def log2sum(a: np.ndarray) -> float:
    """log2 of sum(2**a)."""
    return float(logsumexp(np.asarray(a) * LN2) / LN2)


def profile_objective(z, n: int) -> float:
    """g(z) = h(z) + sum_i z_i log2 C(n, i) on the (n+1)-simplex."""
    z = np.asarray(z, dtype=float)
    return entropy(z) + float(np.dot(z, log2_binom(n)))


def _monotone_root(f: Callable[[float], float], lo: float = -8.0, hi: float = 8.0,
                   limit: float = 99.66) -> float:
    """Root of an increasing function of u = log2 x, expanding the bracket up to |u| <= limit."""
    flo, fhi = f(lo), f(hi)
    while flo > 0 and lo > -limit:
        lo = max(2 * lo, -limit)
        flo = f(lo)
    while fhi < 0 and hi < limit:
        hi = min(2 * hi, limit)
        fhi = f(hi)
    if flo > 0 or fhi < 0:
        raise ThresholdError("no sign change in x bracket [1e-30, 1e30]", f_lo=flo, f_hi=fhi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    return brentq(f, lo, hi, xtol=1e-13, rtol=ROOT_RTOL, maxiter=500)


def _first_violation(cond: Callable[[float], float], floor: float, ceil: float, points: int):
    """Smallest x in [floor, ceil] with cond(x) >= 0, assuming cond(floor) < 0.

    Returns (x, bracket) or (None, None) when cond < 0 on the whole grid, and
    (0.0, None) when cond(floor) >= 0 already.
    """
    grid = np.geomspace(floor, ceil, points)
    prev = None
    for x in grid:
        v = cond(x)
        if v >= 0:
            if prev is None:
                return 0.0, None
            root = brentq(cond, prev, x, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)
            return root, (prev, float(x))
        prev = float(x)
    return None, None


def _first_window_end(cond: Callable[[float], float], floor: float, ceil: float, points: int,
                      start_limit: float = math.inf):
    """Upper end of the first interval on which cond < 0.

    Returns (end, start) where ``start`` is the first grid point at which the
    condition holds; (0.0, None) when it holds nowhere on the grid or only
    from ``start_limit`` onwards.
    """
    grid = np.geomspace(floor, ceil, points)
    vals = np.array([cond(x) for x in grid])
    holds = np.nonzero(vals < 0)[0]
    if holds.size == 0 or grid[holds[0]] >= start_limit:
        return 0.0, None
    k0 = holds[0]
    after = np.nonzero(vals[k0:] >= 0)[0]
    if after.size == 0:
        return float(grid[-1]), float(grid[k0])
    k1 = k0 + after[0]
    end = brentq(cond, grid[k1 - 1], grid[k1], xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)
    return end, float(grid[k0])


# ---------------------------------------------------------------------------
# bipartite ensemble


def F_bipartite(n: int, t: int, sigma: float, check_unique: bool = False,
                u_guess: Optional[float] = None) -> Tuple[float, float]:
    """Maximum of g over {sum_i i z_i = sigma*n, sum_{i>t} z_i = sigma}.

    Returns (F, x) where x > 0 solves the moment equation
    (1-sigma)*mean_lo(x) + sigma*mean_hi(x) = sigma*n, mean_lo and mean_hi
    being the means of i under C(n,i) x^i restricted to [0, t] and [t+1, n].
    That equation is the polynomial condition sum_{i<=t<j} C(n,i)C(n,j)
    (sigma(n-j) - i(1-sigma)) x^(i+j-t-1) = 0 divided by a positive factor.
    """
    if not 0.0 < sigma < 1.0:
        raise ValueError("sigma must lie in (0, 1)")
    if not 1 <= t < n - 1:
        raise ValueError("need 1 <= t < n - 1")
    lb = log2_binom(n)
    i = np.arange(n + 1, dtype=float)
    lo, hi = slice(0, t + 1), slice(t + 1, n + 1)

    def moment(u):
        w = lb + i * u
        pl = np.exp2(w[lo] - log2sum(w[lo]))
        ph = np.exp2(w[hi] - log2sum(w[hi]))
        return (1 - sigma) * float(pl @ i[lo]) + sigma * float(ph @ i[hi]) - sigma * n

    if u_guess is None:
        u = _monotone_root(moment)
    else:
        u = _monotone_root(moment, u_guess - 1.0, u_guess + 1.0)
    if check_unique:
        us = np.linspace(-99.66, 99.66, 4001)
        signs = np.sign([moment(v) for v in us])
        signs = signs[signs != 0]
        if int(np.count_nonzero(np.diff(signs))) != 1:
            raise ThresholdError("moment equation does not have a unique positive root")
    w = lb + i * u
    F = h(sigma) - sigma * n * u + sigma * log2sum(w[hi]) + (1 - sigma) * log2sum(w[lo])
    return F, 2.0 ** u


def sigma0_bipartite(n: int, t: int, points: int = 160) -> ThresholdResult:
    """Smallest sigma > 0 with F_bipartite(n, t, sigma) = (n-1) h(sigma); 0 if none."""
    if t < 1:
        raise ValueError("t must be >= 1")
    last = {"u": None}

    def diff(s):
        F, x = F_bipartite(n, t, s, u_guess=last["u"])
        last["u"] = math.log2(x)
        return F - (n - 1) * h(s)

    query = {"mode": "bipartite_sigma0", "n": n, "t": t}
    root, bracket = _first_violation(diff, SCAN_FLOOR, 0.5, points)
    if root is None:
        raise ThresholdError("F_bipartite stays below (n-1)h(sigma) up to sigma = 0.5", **query)
    if root == 0.0:
        return ThresholdResult(0.0, None, 0.0, "log-grid scan", query,
                               {"note": "F >= (n-1)h(sigma) already at the scan floor",
                                "scan_floor": SCAN_FLOOR, "diff_at_floor": diff(SCAN_FLOOR)})
    F, x = F_bipartite(n, t, root)
    resid = abs(F - (n - 1) * h(root)) / ((n - 1) * h(root))
    return ThresholdResult(root, x, resid, "log-grid scan + Brent", query,
                           {"bracket": bracket, "fraction": root * t / n})


def sigma0_bipartite_asymptotic(n: float, tau: float, eps: Optional[float] = None,
                                points: int = 20000) -> ThresholdResult:
    """Large-n bipartite threshold for local codes correcting t = tau*n errors.

    The condition (1-x) h(x(1-tau)/(1-x)) + x h(tau) + eps < h(x), with
    eps = (1 + log2 n)/n by default, is scanned for x in (0, tau). The
    returned value is the upper end of the first interval where it holds
    (0 when it holds nowhere), capped at tau.
    """
    if not 0.0 < tau < 0.5:
        raise ValueError("tau must lie in (0, 1/2)")
    if eps is None:
        eps = (1 + math.log2(n)) / n

    def cond(x):
        return (1 - x) * h(x * (1 - tau) / (1 - x)) + x * h(tau) + eps - h(x)

    end, start = _first_window_end(cond, SCAN_FLOOR, tau, points)
    value = min(end, tau)
    resid = abs(cond(value)) if 0 < value < tau else 0.0
    return ThresholdResult(value, None, resid, "log-grid scan + Brent",
                           {"mode": "bipartite_asymptotic", "n": n, "tau": tau, "eps": eps},
                           {"window_start": start})


# ---------------------------------------------------------------------------
# hypergraph ensemble: degree-profile optimisation


def _balance_features(n: int, t: int, d0: int) -> np.ndarray:
    i = np.arange(n + 1, dtype=float)
    c = np.where(i <= t, i, np.where(i >= d0 - t, -float(t), 0.0))
    return np.stack([i, c], axis=1)


@dataclass
class _DualSolution:
    value: float
    theta: np.ndarray
    z: np.ndarray
    residual: float
    iterations: int
    method: str


def _dual_newton(lb, feats, b, theta0, tol, max_iter=200):
    """Minimise D(theta) = log2 sum_i 2^(lb_i + feats_i.theta) - theta.b by damped Newton."""

    def evaluate(th):
        w = lb + feats @ th
        A = log2sum(w)
        return A - th @ b, np.exp2(w - A)

    th = np.array(theta0, dtype=float)
    D, p = evaluate(th)
    for it in range(1, max_iter + 1):
        mean = p @ feats
        r = mean - b
        if np.all(np.abs(r) <= tol):
            return th, D, p, float(np.max(np.abs(r))), it
        cov = (feats * p[:, None]).T @ feats - np.outer(mean, mean)
        hess = LN2 * cov
        lam = 1e-12 * max(np.trace(hess), 1e-300)
        while True:
            try:
                step = np.linalg.solve(hess + lam * np.eye(2), r)
                break
            except np.linalg.LinAlgError:
                lam = max(lam * 100, 1e-12)
        a = 1.0
        while True:
            tn = th - a * step
            Dn, pn = evaluate(tn)
            if Dn <= D - 1e-4 * a * float(r @ step) or a < 1e-10:
                break
            a *= 0.5
        if a < 1e-10 and Dn > D:
            break
        th, D, p = tn, Dn, pn
    return None


def _dual_nested(lb, feats, b, tol):
    """Fallback: bisection on theta_1 with theta_2 solved on each slice."""

    def inner(a):
        def r2(c):
            w = lb + feats[:, 0] * a + feats[:, 1] * c
            return float(np.exp2(w - log2sum(w)) @ feats[:, 1]) - b[1]
        return _monotone_root(r2, limit=4000.0)

    def r1(a):
        c = inner(a)
        w = lb + feats[:, 0] * a + feats[:, 1] * c
        return float(np.exp2(w - log2sum(w)) @ feats[:, 0]) - b[0]

    a = _monotone_root(r1, limit=4000.0)
    th = np.array([a, inner(a)])
    w = lb + feats @ th
    A = log2sum(w)
    p = np.exp2(w - A)
    return th, A - th @ b, p, float(np.max(np.abs(p @ feats - b)))


def _tilde_F_solve(n: int, t: int, d0: int, gamma: float, theta0=None) -> _DualSolution:
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if t < 1 or d0 - t <= t or d0 - t > n:
        raise ValueError("need t >= 1 and t < d0 - t <= n")
    lb = log2_binom(n)
    feats = _balance_features(n, t, d0)
    b = np.array([gamma * n, 0.0])
    tol = 1e-11 * gamma * n
    if theta0 is None:
        theta0 = (math.log2(gamma), 0.0)
    out = _dual_newton(lb, feats, b, theta0, tol)
    method = "dual Newton"
    if out is None:
        th, D, p, res = _dual_nested(lb, feats, b, tol)
        it, method = 0, "dual nested bisection"
    else:
        th, D, p, res, it = out
    return _DualSolution(float(D), th, p, res / (gamma * n), it, method)


def tilde_F(n: int, t: int, d0: int, gamma: float) -> Tuple[float, np.ndarray]:
    """max g(z) over {sum i z_i = gamma n, sum_{i<=t} i z_i = t sum_{i>=d0-t} z_i}.

    The maximiser has the form z_i ~ C(n,i) x^i y^(c_i) with c_i = i for
    i <= t, -t for i >= d0 - t and 0 in between; (log2 x, log2 y) minimises
    the convex dual, whose minimum equals the constrained maximum.
    Returns (value, maximising z).
    """
    sol = _tilde_F_solve(n, t, d0, gamma)
    return sol.value, sol.z


def tilde_F_hamming(n: int, gamma: float) -> Tuple[float, float]:
    """Closed form of tilde_F for t = 1, d0 = 3.

    value = -gamma n log2 x + log2(1 + 2 sqrt(n W(x))), W(x) = sum_{i>=2} C(n,i) x^(i+1),
    with x the positive root of sum (i+1) C(n,i) x^(i+1) = gamma (2n W + sqrt(n W)).
    Returns (value, x).
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    lb = log2_binom(n)[2:]
    i = np.arange(2, n + 1, dtype=float)

    def logW(u):
        return log2sum(lb + (i + 1) * u)

    def q_of(u):  # log2 sqrt(n W)
        return 0.5 * (math.log2(n) + logW(u))

    def log1p2(q):  # log2(1 + 2 * 2^q)
        return q + 1 + math.log2(1 + 2.0 ** (-q - 1)) if q > -30 else math.log2(1 + 2.0 ** (q + 1))

    def eq(u):
        num = log2sum(np.log2(i + 1) + lb + (i + 1) * u)
        q = q_of(u)
        den = q + log1p2(q)  # log2(sqrt(nW) (1 + 2 sqrt(nW)))
        return num - den - math.log2(gamma)

    u = _monotone_root(eq)
    return -gamma * n * u + log1p2(q_of(u)), 2.0 ** u


def gamma0_hypergraph(n: int, t: int, d0: int, l: int, points: int = 300) -> ThresholdResult:
    """sup{x : (l/n) tilde_F(gamma) < (l-1) h(gamma) for all 0 < gamma <= x}."""
    if l < 2:
        raise ValueError("l must be >= 2")
    warm = {"theta": None}

    def cond(g):
        sol = _tilde_F_solve(n, t, d0, g, warm["theta"])
        warm["theta"] = sol.theta
        return (l / n) * sol.value - (l - 1) * h(g)

    query = {"mode": "hypergraph_gamma0", "n": n, "t": t, "d0": d0, "l": l}
    grid = np.geomspace(SCAN_FLOOR, 0.5, points)
    prev = None
    for g in grid:
        if cond(g) >= 0:
            break
        prev = float(g)
    else:
        raise ThresholdError("condition holds up to gamma = 0.5", **query)
    if prev is None:
        return ThresholdResult(0.0, None, 0.0, "log-grid scan", query, {"scan_floor": SCAN_FLOOR})
    warm["theta"] = None
    root = brentq(lambda g: (l / n) * _tilde_F_solve(n, t, d0, g).value - (l - 1) * h(g),
                  prev, float(g), xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)
    sol = _tilde_F_solve(n, t, d0, root)
    lhs, rhs = (l / n) * sol.value, (l - 1) * h(root)
    return ThresholdResult(root, {"log2_x": sol.theta[0], "log2_y": sol.theta[1]},
                           abs(lhs - rhs) / rhs, "log-grid scan + Brent; " + sol.method, query,
                           {"bracket": (prev, float(g)), "moment_residual": sol.residual})


# ---------------------------------------------------------------------------
# distance bounds


def _distance_x0(n: int, d0: int, omega: float):
    """log2 x0 solving omega n + sum_{i>=d0} C(n,i)(omega n - i) x^i = 0, and log2 of 1 + sum C(n,i) x0^i."""
    lb = log2_binom(n)
    i = np.arange(n + 1, dtype=float)
    idx = np.concatenate([[0], np.arange(d0, n + 1)])
    base = np.where(idx == 0, 0.0, lb[idx])
    ii = i[idx]

    def mean(u):
        w = base + ii * u
        return float(np.exp2(w - log2sum(w)) @ ii) - omega * n

    u = _monotone_root(mean)
    return u, log2sum(base + ii * u)


def distance_exponent(n: int, d0: int, l: int, omega: float) -> float:
    """(l/n) log2((1 + sum_{i>=d0} C(n,i) x0^i) / x0^(omega n)) - (l-1) h(omega)."""
    u, logz = _distance_x0(n, d0, omega)
    return (l / n) * (logz - omega * n * u) - (l - 1) * h(omega)


def delta_bound(n: int, d0: int, l: int, points: int = 512) -> ThresholdResult:
    """Lower bound on the ensemble relative distance: first omega where the exponent reaches 0."""
    if l < 2 or not 2 <= d0 <= n:
        raise ValueError("need l >= 2 and 2 <= d0 <= n")
    query = {"mode": "distance_bound", "n": n, "d0": d0, "l": l}
    root, bracket = _first_violation(lambda w: distance_exponent(n, d0, l, w), SCAN_FLOOR, 0.5, points)
    if root is None:
        raise ThresholdError("exponent negative up to omega = 0.5", **query)
    if root == 0.0:
        return ThresholdResult(0.0, None, 0.0, "log-grid scan", query, {"scan_floor": SCAN_FLOOR})
    u, _ = _distance_x0(n, d0, root)
    return ThresholdResult(root, 2.0 ** u, abs(distance_exponent(n, d0, l, root)) / ((l - 1) * h(root)),
                           "log-grid scan + Brent", query, {"bracket": bracket})


def delta_asymptotic(l: int, delta0: float) -> ThresholdResult:
    """Root x in (0, 1/2) of h(x)/x = (l/(l-1)) h(delta0)/delta0."""
    if l < 2 or not 0.0 < delta0 <= 0.5:
        raise ValueError("need l >= 2 and 0 < delta0 <= 1/2")
    target = l / (l - 1) * h(delta0) / delta0
    f = lambda x: h(x) / x - target  # noqa: E731
    root = brentq(f, 1e-300, 0.5, xtol=1e-300, rtol=ROOT_RTOL, maxiter=2000)
    return ThresholdResult(root, root, abs(f(root)) / target, "Brent on (0, 1/2)",
                           {"mode": "distance_asymptotic", "l": l, "delta0": delta0})


# ---------------------------------------------------------------------------
# hypergraph ensemble, long local codes


def gamma0_long_condition(x: float, tau: float, delta0: float, l: int, eps: float = 0.0) -> float:
    """(1 - x/d) h(x tau/(d - x)) + (x/d) h(d - tau) + eps - (1 - 1/l) h(x), d = delta0."""
    return ((1 - x / delta0) * h(x * tau / (delta0 - x)) + (x / delta0) * h(delta0 - tau)
            + eps - (1 - 1 / l) * h(x))


def x0_long(tau: float, delta0: float, l: int, eps: float = 0.0, points: int = 800) -> float:
    """Upper end of the first interval of x where the long-code condition holds.

    Only an interval starting below tau counts: near x = delta0/(1+tau) the
    first entropy argument reaches 1 and the condition holds again, but such
    an interval cannot raise min(tau, x0).
    """
    ceil = delta0 / (1 + tau) * (1 - 1e-12)
    end, _ = _first_window_end(lambda x: gamma0_long_condition(x, tau, delta0, l, eps),
                               SCAN_FLOOR, ceil, points, start_limit=tau)
    return end


def gamma0_asymptotic(l: int, delta0: float, n: Optional[float] = None, eps_mode: str = "zero",
                      tau_points: int = 400) -> ThresholdResult:
    """max over 0 < tau <= delta0/2 of min(tau, x0(tau)).

    eps_mode "zero" drops the slack term; "logn" uses log2(n)/n and needs n.
    """
    if l < 2 or not 0.0 < delta0 < 0.5:
        raise ValueError("need l >= 2 and 0 < delta0 < 1/2")
    if eps_mode == "zero":
        eps = 0.0
    elif eps_mode == "logn":
        if n is None:
            raise ValueError("eps_mode 'logn' needs n")
        eps = math.log2(n) / n
    else:
        raise ValueError(f"unknown eps_mode {eps_mode!r}")

    def g0(tau):
        return min(tau, x0_long(tau, delta0, l, eps))

    taus = np.linspace(delta0 / 2 / tau_points, delta0 / 2, tau_points)
    vals = np.array([g0(x) for x in taus])
    k = int(np.argmax(vals))
    best_tau, best = float(taus[k]), float(vals[k])
    lo, hi = float(taus[max(k - 1, 0)]), float(taus[min(k + 1, len(taus) - 1)])
    gap = lambda x: x - x0_long(x, delta0, l, eps)  # noqa: E731
    method = "tau grid"
    if lo < hi and gap(lo) < 0 < gap(hi):
        tau = brentq(gap, lo, hi, xtol=1e-14, rtol=ROOT_RTOL)
        if g0(tau) >= best:
            best_tau, best, method = tau, g0(tau), "tau grid + Brent on tau = x0(tau)"
    resid = abs(gamma0_long_condition(best, best_tau, delta0, l, eps)) if best < best_tau else 0.0
    return ThresholdResult(best, best_tau, resid, method,
                           {"mode": "gamma0_asymptotic", "l": l, "delta0": delta0, "eps": eps},
                           {"x0_at_tau": x0_long(best_tau, delta0, l, eps)})


def interval_entropy_bound(lam: float, mu1: float, mu2: float, gamma: float, tau: float) -> float:
    """Upper bound on sum_i z_i h(i/n) from the three-interval split of the degree profile.

    lam h(mu1/lam) + (1 - lam - mu1/tau) h((gamma - mu1 - mu2)/(1 - lam - mu1/tau))
    + (mu1/tau) h(mu2 tau/mu1).
    """
    mid = 1 - lam - mu1 / tau
    out = 0.0
    if lam > 0:
        out += lam * h(mu1 / lam)
    if mid > 0:
        out += mid * h((gamma - mu1 - mu2) / mid)
    if mu1 > 0:
        out += (mu1 / tau) * h(mu2 * tau / mu1)
    return out
