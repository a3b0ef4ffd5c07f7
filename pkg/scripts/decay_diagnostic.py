"""How fast M^n approaches the stationary matrix for built instances.

For each order, prints max|M^n - S| at n and 2n, averaged over random sequences.
The gap at 2n should be much smaller; the instance is still exact at every n.
"""

import argparse
import random

from skolemchain.analysis import decay_profile
from skolemchain.randomized import random_nondegenerate_lrs
from skolemchain.reduction import build_instance


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("-n", type=int, default=8)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'order':>5}  {'gap(n)':>12}  {'gap(2n)':>12}")
    for order in range(1, 7):
        at_n = at_2n = 0.0
        for _ in range(args.samples):
            inst, cert = build_instance(random_nondegenerate_lrs(rng, order))
            a, b = decay_profile(inst.matrix, cert.S, args.n)
            at_n += float(a)
            at_2n += float(b)
        print(f"{order:>5}  {at_n / args.samples:12.3e}  {at_2n / args.samples:12.3e}")


if __name__ == "__main__":
    main()
