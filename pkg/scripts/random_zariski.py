"""Check the Zariski decomposition contract on random blow-up scripts.

    python scripts/random_zariski.py --count 500 --seed 1
"""

from __future__ import annotations

import argparse
import random
from collections import Counter

from logsurf.acceptance import random_config, random_effective_divisor, zariski_contract
from logsurf.surfaces import zariski


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-blowups", type=int, default=8)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    stats: Counter[str] = Counter()
    for k in range(args.count):
        config = random_config(rng, max_blowups=args.max_blowups)
        d = random_effective_divisor(rng, config)
        if not d:
            stats["empty divisor"] += 1
            continue
        bad = zariski_contract(config, d)
        if bad:
            stats["violations"] += 1
            print(f"case {k}: {config.base.label()} with {len(config.blowups)} blow-ups: {bad}")
            continue
        stats["ok"] += 1
        stats[f"|supp N| = {len(zariski(config, d).negative)}"] += 1
    for key, v in sorted(stats.items()):
        print(f"{key:>16}: {v}")


if __name__ == "__main__":
    main()
