"""Turn a return CSV (percent logreturns, no date column) into one daily
price file per column, for building synthetic fixtures.

    python tools/returns_to_prices.py simulated.csv outdir --start 2015-01-01
"""

import argparse
import csv
import datetime as dt
import math
import pathlib


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("returns")
    ap.add_argument("outdir")
    ap.add_argument("--start", default="2015-01-01")
    ap.add_argument("--price", type=float, default=100.0)
    ap.add_argument("--names", nargs="*")
    args = ap.parse_args()

    with open(args.returns, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    names = args.names or header
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    start = dt.date.fromisoformat(args.start)
    for k, name in enumerate(names):
        price = args.price
        with open(out / f"{name}.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["date", "close"])
            w.writerow([start.isoformat(), f"{price:.10g}"])
            for i, row in enumerate(body, start=1):
                price *= math.exp(float(row[k]) / 100.0)
                w.writerow([(start + dt.timedelta(days=i)).isoformat(), f"{price:.10g}"])


if __name__ == "__main__":
    main()
