#!/usr/bin/env python3
"""Run the lemma and theorem sweeps on a catalog and print one line per check.

    python3 scripts/run_sweeps.py --max-n 10 --max-excess 7 --json sweeps.json
"""

import argparse
import json
import sys
import time

from brickforge.generator import generate_catalog, load_catalog
from brickforge.verify import (
    SuiteReport,
    catalog_instances,
    check_catalog_soundness,
    check_decomposition_invariance,
    check_expansion_roundtrip,
    check_oracle_equivalence,
    core_suite,
    lemma_suite,
    suite_graphs,
)


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-excess", type=int, default=None)
    p.add_argument("--catalog", help="load a saved catalog instead of generating one")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--skip-heavy", action="store_true", help="skip decomposition and oracle sweeps")
    p.add_argument("--json", help="write the full report here")
    args = p.parse_args()

    entries = load_catalog(args.catalog) if args.catalog else generate_catalog(args.max_n, max_excess=args.max_excess)
    inst = catalog_instances(entries)
    print(f"{len(entries)} catalog entries", flush=True)

    results = core_suite()
    for r in results:
        print(r.line(), flush=True)
    t = time.perf_counter()
    for r in lemma_suite(inst, args.max_n):
        results.append(r)
        print(r.line(), flush=True)
    extra = [lambda: check_catalog_soundness(entries), lambda: check_expansion_roundtrip(inst, args.max_n)]
    if not args.skip_heavy:
        graphs = [G for G, _ in inst]
        extra += [lambda: check_decomposition_invariance(graphs, args.seed),
                  lambda: check_oracle_equivalence(suite_graphs(inst), seed=args.seed)]
    for run in extra:
        r = run()
        results.append(r)
        print(r.line(), flush=True)
    print(f"{time.perf_counter() - t:.1f}s")

    report = SuiteReport("sweeps", results)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=1)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
