"""Sweep random comprehension instances: derive, check, and time each one.

Prints one CSV row per instance (seed, index, formula depth, proof size,
check time in ms, whether the intuitionistic profile rejects it) and a summary line.

    python3 scripts/ca_sweep.py --seeds 5 --count 20 --max-depth 6
"""

import argparse
import csv
import statistics
import sys
import time

from predicheck import corpus as C
from predicheck import derivations as DV
from predicheck import logic as L


def run(seeds: int, count: int, max_depth: int, out) -> int:
    writer = csv.writer(out)
    writer.writerow(["seed", "index", "depth", "proof_nodes", "check_ms", "intuitionistic_rejects"])
    times, failures = [], 0
    for seed in range(seeds):
        for i, phi in enumerate(C.generated_phis(count, seed, max_depth)):
            inst = DV.derive_ca(phi)
            t0 = time.perf_counter()
            try:
                L.check_proof(DV.CA_PROFILE, {}, inst.proof, inst.goal)
            except L.ProofError as e:
                failures += 1
                print(f"seed {seed} #{i}: {e}", file=sys.stderr)
                continue
            ms = (time.perf_counter() - t0) * 1000
            times.append(ms)
            try:
                L.check_proof(L.INTUITIONISTIC, {}, inst.proof, inst.goal)
                rejects = False
            except L.ProofError:
                rejects = True
            nodes = sum(1 for _ in L.iter_nodes(inst.proof))
            writer.writerow([seed, i, C.depth(phi), nodes, f"{ms:.2f}", rejects])
    print(f"# {len(times)} checked, {failures} failed, median {statistics.median(times):.2f} ms"
          if times else f"# nothing checked, {failures} failed", file=sys.stderr)
    return 1 if failures else 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--count", type=int, default=16)
    ap.add_argument("--max-depth", type=int, default=5)
    args = ap.parse_args()
    return run(args.seeds, args.count, args.max_depth, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
