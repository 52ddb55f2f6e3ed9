"""Write every threshold table as CSV into an output directory.

    python3 scripts/reproduce_tables.py --out results/
"""

import argparse
import time
from pathlib import Path

from tannercodes import tables


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--which", nargs="*", choices=tables.TABLES, default=list(tables.TABLES))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.which:
        t0 = time.perf_counter()
        rows = tables.table_rows(name)
        path = args.out / f"{name}.csv"
        path.write_text(tables.to_csv(name, rows))
        print(f"{name}: {len(rows)} rows -> {path} ({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
