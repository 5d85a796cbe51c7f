"""Volumes of the node blow-up chain on the even example, climbing to its volume.

    python scripts/nklt_sequence.py --n 3 --s-max 30 --csv nklt.csv
"""

from __future__ import annotations

import argparse
import csv

from logsurf.constructions import example_even, nklt_volume_sequence
from logsurf.rational import decimal_str, fmt


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3, help="number of vertical lines")
    ap.add_argument("--s-max", type=int, default=20)
    ap.add_argument("--csv")
    args = ap.parse_args()

    pair, _ = example_even(args.n)
    seq = nklt_volume_sequence(pair, "H1", "V1", args.s_max)
    print(f"limit {fmt(seq.limit)}, strictly increasing: {seq.strictly_increasing}")
    print(f"{'s':>4}  {'volume':>12}  {'gap':>8}")
    for (s, v), gap in zip(seq.entries, seq.gaps):
        print(f"{s:>4}  {fmt(v):>12}  {fmt(gap):>8}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["s", "volume", "decimal"])
            w.writerows((s, fmt(v), decimal_str(v)) for s, v in seq.entries)


if __name__ == "__main__":
    main()
