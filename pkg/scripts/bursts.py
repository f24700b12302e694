#!/usr/bin/env python3
"""Longest cyclic burst each decoder corrects under the worked orderings."""

import argparse

from eii import catalog
from eii.analysis import Ordering, delta_bound, max_correctable_burst

DECODERS = ("rows-only", "transpose-only", "row-column", "iterative")


def orderings():
    yield "ex11", "row-wise", Ordering.row_wise(4, 4)
    yield "ex11", "diagonal", Ordering(catalog.EX11_DIAGONAL, "diagonal")
    yield "ex12", "reference", Ordering(catalog.EX12_ORDER, "reference")
    yield "ex13", "reference", Ordering(catalog.EX13_ORDER, "reference")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--criterion", choices=("rank", "distance"), default="rank")
    args = ap.parse_args()
    print(f"{'code':5} {'ordering':10} " + " ".join(f"{d:>14}" for d in DECODERS) + "  single-code bound  parities")
    for name, label, order in orderings():
        code = catalog.get(name)
        lengths = [max_correctable_burst(code, order, d, args.criterion).length for d in DECODERS]
        db = delta_bound(code)
        print(f"{name:5} {label:10} " + " ".join(f"{L:14d}" for L in lengths) +
              f"  {db.bound:17d}  {db.parities:8d}")


if __name__ == "__main__":
    main()
