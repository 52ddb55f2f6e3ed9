"""Threshold tables for standard local codes, emitted as CSV rows."""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import Dict, List

from . import thresholds as th

TABLES = ("example1", "example2_n511", "rate_half", "examples34")

# published ensemble-distance estimates for the two long-code settings;
# printed next to the value of h(x)/x = (l/(l-1)) h(delta0)/delta0
REFERENCE_DELTA = {(3, 0.05): 0.0112, (10, 0.01): 0.00599}


def _hamming_rate(n: int, l: int) -> float:
    r = (n + 1).bit_length() - 1
    R0 = Fraction(n - r, n)
    return float(l * R0 - (l - 1))


def _fmt(x, digits: int = 7) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{x:.{digits}g}"


def _hypergraph_row(n: int, l: int) -> Dict[str, str]:
    row = {"n": n, "l": l, "t": 1, "d0": 3, "rate_lower": _fmt(_hamming_rate(n, l), 4)}
    errors = []
    try:
        row["gamma0"] = _fmt(th.gamma0_hypergraph(n, 1, 3, l).value)
    except th.ThresholdError as exc:
        row["gamma0"] = ""
        errors.append(f"gamma0: {exc}")
    try:
        row["delta"] = _fmt(th.delta_bound(n, 3, l).value)
    except th.ThresholdError as exc:
        row["delta"] = ""
        errors.append(f"delta: {exc}")
    row["error"] = "; ".join(errors)
    return row


def table_rows(which: str) -> List[Dict[str, str]]:
    if which == "example1":
        rows = []
        for name, n, k, d0, t in (("golay23", 23, 12, 7, 3), ("bch_31_21", 31, 21, 5, 2)):
            res = th.sigma0_bipartite(n, t)
            rows.append({"code": name, "n": n, "l": 2, "t": t, "d0": d0,
                         "rate_lower": _fmt(float(2 * Fraction(k, n) - 1), 4),
                         "sigma0": _fmt(res.value), "fraction": _fmt(res.value * t / n)})
        return rows
    if which == "example2_n511":
        return [_hypergraph_row(511, l) for l in (17, 23, 28, 34, 40, 45, 51)]
    if which == "rate_half":
        return [_hypergraph_row(n, l) for n, l in ((127, 9), (255, 16), (511, 28), (1023, 51))]
    if which == "examples34":
        rows = []
        for l, d0 in ((3, 0.05), (10, 0.01)):
            g = th.gamma0_asymptotic(l, d0)
            rate = l * (1 - th.h(d0)) - (l - 1)  # local codes on the GV bound
            rows.append({"l": l, "delta0": d0, "rate_lower": _fmt(rate, 4),
                         "gamma0": _fmt(g.value), "tau": _fmt(g.root),
                         "delta_eq": _fmt(th.delta_asymptotic(l, d0).value),
                         "delta_reference": _fmt(REFERENCE_DELTA[(l, d0)])})
        return rows
    raise ValueError(f"unknown table {which!r}; choose from {', '.join(TABLES)}")


COLUMNS = {
    "example1": ["code", "n", "l", "t", "d0", "rate_lower", "sigma0", "fraction"],
    "example2_n511": ["n", "l", "t", "d0", "rate_lower", "gamma0", "delta", "error"],
    "rate_half": ["n", "l", "t", "d0", "rate_lower", "gamma0", "delta", "error"],
    "examples34": ["l", "delta0", "rate_lower", "gamma0", "tau", "delta_eq", "delta_reference"],
}


def to_csv(which: str, rows: List[Dict[str, str]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS[which], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
