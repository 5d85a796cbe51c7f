"""Send the first chain length of the iterated line construction to infinity.

    python scripts/iterated_sweep.py --n 5 --frozen 3,4,5 --s-max 40
"""

from __future__ import annotations

import argparse

from logsurf.constructions import iterated_sweep
from logsurf.rational import fmt


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--frozen", default="3,4,5", help="s_2,...,s_{n-1}")
    ap.add_argument("--s-max", type=int, default=30)
    args = ap.parse_args()

    frozen = [int(x) for x in args.frozen.split(",")]
    seq = iterated_sweep(args.n, frozen, args.s_max)
    print(f"n={args.n} frozen={frozen} limit={fmt(seq.limit)} increasing={seq.strictly_increasing}")
    for (s1, v), gap in zip(seq.entries, seq.gaps):
        print(f"s1={s1:>3}  value={fmt(v):>12}  limit - value={fmt(gap)}")


if __name__ == "__main__":
    main()
