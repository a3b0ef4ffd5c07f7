"""Build many instances and run the full certificate verifier on each.

    python scripts/batch_identity_check.py --count 200 --max-order 6
"""

import argparse
import random
import time
from collections import Counter

from skolemchain.analysis import verify_certificate
from skolemchain.randomized import random_nondegenerate_lrs
from skolemchain.reduction import build_instance


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--horizon", type=int, default=30)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    failures = Counter()
    start = time.perf_counter()
    for idx in range(args.count):
        l = random_nondegenerate_lrs(rng, 1 + idx % args.max_order)
        inst, cert = build_instance(l)
        for check in verify_certificate(l, inst, cert, args.horizon).failed():
            failures[check.name] += 1
    elapsed = time.perf_counter() - start
    print(f"{args.count} instances, horizon {args.horizon}, {elapsed:.1f}s")
    if failures:
        for name, n in failures.most_common():
            print(f"  {name}: {n} failures")
    else:
        print("  all checks passed")


if __name__ == "__main__":
    main()
