"""Command-line front end.

    tannercodes threshold {bipartite|bipartite-asymptotic|hypergraph|distance|
                           asymptotic-delta|asymptotic-gamma0} [flags]
    tannercodes tables {example1|example2_n511|rate_half|examples34}
    tannercodes simulate --code golay23 --l 2 --m 1000 --t 3 --errors 11 --trials 200 --seed 1
    tannercodes oracle --code 'hamming(3)' --l 2 --m 2 --seed 1

Exit codes: 0 success, 1 usage error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import decoders, experiments, tables
from . import thresholds as th

MODES = ("bipartite", "bipartite-asymptotic", "hypergraph", "distance",
         "asymptotic-delta", "asymptotic-gamma0")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _require(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.mode} needs {', '.join(missing)}")


def run_threshold(args) -> dict:
    mode = args.mode
    if mode == "bipartite":
        _require(args, "n", "t")
        res = th.sigma0_bipartite(args.n, args.t)
    elif mode == "bipartite-asymptotic":
        _require(args, "n", "tau")
        res = th.sigma0_bipartite_asymptotic(args.n, args.tau)
    elif mode == "hypergraph":
        _require(args, "n", "t", "d0", "l")
        res = th.gamma0_hypergraph(args.n, args.t, args.d0, args.l)
    elif mode == "distance":
        _require(args, "n", "d0", "l")
        res = th.delta_bound(args.n, args.d0, args.l)
    elif mode == "asymptotic-delta":
        _require(args, "l", "delta0")
        res = th.delta_asymptotic(args.l, args.delta0)
    else:
        _require(args, "l", "delta0")
        res = th.gamma0_asymptotic(args.l, args.delta0, args.n, args.eps)
        res.diagnostics["delta_eq"] = th.delta_asymptotic(args.l, args.delta0).value
        ref = tables.REFERENCE_DELTA.get((args.l, args.delta0))
        if ref is not None:
            res.diagnostics["delta_reference"] = ref
    out = res.to_dict()
    out["tolerances"] = {"scan_floor": th.SCAN_FLOOR, "root_xtol": th.ROOT_XTOL}
    return out


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flat_csv(records: List[dict]) -> str:
    flat = []
    for r in records:
        row = {}
        for k, v in r.items():
            if isinstance(v, dict):
                for kk, vv in v.items():
                    row[f"{k}.{kk}"] = json.dumps(vv) if isinstance(vv, (dict, list)) else vv
            elif isinstance(v, list):
                row[k] = json.dumps(v)
            else:
                row[k] = v
        flat.append(row)
    cols = []
    for row in flat:
        cols += [c for c in row if c not in cols]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tannercodes", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)
        sp.add_argument("--out", metavar="PATH")

    t = sub.add_parser("threshold", help="evaluate one ensemble threshold")
    t.add_argument("mode", choices=MODES)
    t.add_argument("--n", type=int)
    t.add_argument("--t", type=int)
    t.add_argument("--d0", type=int)
    t.add_argument("--l", type=int)
    t.add_argument("--tau", type=float)
    t.add_argument("--delta0", type=float)
    t.add_argument("--eps", choices=("zero", "logn"), default="zero",
                   help="slack term for asymptotic-gamma0 ('logn' uses log2(n)/n, needs --n)")
    common(t)

    tb = sub.add_parser("tables", help="reproduce a threshold table")
    tb.add_argument("which", choices=tables.TABLES)
    common(tb, "csv")

    def sim_flags(sp):
        sp.add_argument("--code", required=True, help="local code, e.g. golay23, 'hamming(3)', file:PATH")
        sp.add_argument("--l", type=int, default=2)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--t", type=int, required=True)
        sp.add_argument("--seed", type=int, required=True)
        sp.add_argument("--s", type=int, default=2)

    s = sub.add_parser("simulate", help="Monte Carlo decoding trials")
    sim_flags(s)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--errors", type=int)
    g.add_argument("--error-frac", type=float)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--max-iters", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--trace", metavar="PATH", help="write per-iteration traces of trial 0 as JSON lines")
    common(s)

    o = sub.add_parser("oracle", help="exhaustive checks on a small instance")
    sim_flags(o)
    common(o)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "threshold":
            rec = run_threshold(args)
            text = _flat_csv([rec]) if args.format == "csv" else json.dumps(rec, indent=2, sort_keys=True) + "\n"
        elif args.command == "tables":
            rows = tables.table_rows(args.which)
            if args.format == "csv":
                text = tables.to_csv(args.which, rows)
            else:
                text = json.dumps(rows, indent=2) + "\n"
        elif args.command == "simulate":
            cfg = experiments.SimConfig(args.code, args.l, args.m, args.t, args.seed, args.trials,
                                        args.errors, args.error_frac, args.max_iters, args.s)
            report = experiments.simulate(cfg, args.jobs)
            if args.trace:
                with open(args.trace, "w") as fh:
                    decoders.write_trace(experiments.trace_trial(cfg, 0), fh)
            if args.format == "csv":
                text = _flat_csv(report["trials"])
            else:
                text = json.dumps(report, indent=2, sort_keys=True) + "\n"
        else:
            rep = experiments.oracle(args.code, args.l, args.m, args.seed, args.t, args.s)
            text = _flat_csv([rep]) if args.format == "csv" else json.dumps(rep, indent=2, sort_keys=True) + "\n"
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tannercodes: error: {exc}", file=sys.stderr)
        return 1
    except th.ThresholdError as exc:
        print(json.dumps({"error": str(exc), "diagnostics": th._jsonable(exc.diagnostics)}), file=sys.stderr)
        return 2
    except (ValueError, IndexError) as exc:
        print(f"tannercodes: error: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
