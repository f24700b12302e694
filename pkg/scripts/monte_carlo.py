#!/usr/bin/env python3
"""Average number of random erasures corrected before the first decoding failure.

Default run: the two-code comparisons (7x7 binary codes and 16x16 binary
codes) plus, with --large, the three 256x16 codes over GF(16).

    python3 scripts/monte_carlo.py --trials 10000
    python3 scripts/monte_carlo.py --code ex2b --decoder iterative --trials 2000
"""

import argparse
import json
import time

from eii import catalog
from eii.analysis import monte_carlo_avg_erasures

# (code, decoder, criterion, reference average)
TABLE = [
    ("ex2a", "envelope", None, 17.8),
    ("ex2b", "row-column", "distance", 22.7),
    ("ex2bis-a", "envelope", None, 38.0),
    ("ex2bis-b", "row-column", "distance", 48.0),
]
LARGE = [
    ("ex25bis-1", "recursive", "distance", 119.0),
    ("ex25bis-2", "recursive", "distance", 184.0),
    ("ex25bis-3", "recursive", "distance", 369.0),
]


def run(rows, trials, seed):
    out = []
    for name, dec, crit, ref in rows:
        t0 = time.perf_counter()
        r = monte_carlo_avg_erasures(catalog.get(name), dec, trials, seed, criterion=crit)
        out.append({"code": name, "decoder": dec, "criterion": crit or "default", "trials": trials,
                    "mean": round(r.mean, 3), "stderr": round(r.stderr, 3), "reference": ref,
                    "seconds": round(time.perf_counter() - t0, 1)})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--large", action="store_true", help="include the 256x16 codes (slow)")
    ap.add_argument("--code", help="a single catalogued code instead of the table")
    ap.add_argument("--decoder", default="envelope")
    ap.add_argument("--criterion")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    if args.code:
        rows = [(args.code, args.decoder, args.criterion, None)]
    else:
        rows = TABLE + (LARGE if args.large else [])
    res = run(rows, args.trials, args.seed)
    if args.json:
        print(json.dumps(res, indent=2))
        return
    print(f"{'code':10} {'decoder':11} {'criterion':9} {'mean':>8} {'stderr':>7} {'reference':>9} {'s':>6}")
    for r in res:
        pub = "" if r["reference"] is None else f"{r['reference']:.1f}"
        print(f"{r['code']:10} {r['decoder']:11} {r['criterion']:9} {r['mean']:8.3f} {r['stderr']:7.3f} "
              f"{pub:>9} {r['seconds']:6.1f}")


if __name__ == "__main__":
    main()
