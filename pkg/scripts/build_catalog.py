#!/usr/bin/env python3
"""Build the near-bipartite brick catalog and write it to a directory.

    python3 scripts/build_catalog.py --max-n 10 --max-excess 7 --out catalog_n10
"""

import argparse
import time
from collections import Counter

from brickforge.generator import default_max_excess, generate_catalog, save_catalog, simple_classes


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-excess", type=int, default=None)
    p.add_argument("--simple-only", action="store_true")
    p.add_argument("--out", default=None)
    args = p.parse_args()

    bound = args.max_excess if args.max_excess is not None else default_max_excess(args.max_n)
    t = time.perf_counter()
    entries = generate_catalog(args.max_n, simple_only=args.simple_only, max_excess=bound,
                               progress=lambda level, count: print(f"excess {level}: {count} entries", flush=True))
    by = Counter((c.graph.n, c.excess) for c in entries)
    for (n, ex), count in sorted(by.items()):
        print(f"n={n:2d} excess={ex:2d}: {count}")
    print(f"{len(entries)} entries, {len(simple_classes(entries))} simple classes, "
          f"{time.perf_counter() - t:.1f}s")
    if args.out:
        print(f"wrote {save_catalog(entries, args.out)}")


if __name__ == "__main__":
    main()
