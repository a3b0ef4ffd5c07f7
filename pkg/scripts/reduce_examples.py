"""Reduce every sequence under data/ and print a one-line summary per component.

    python scripts/reduce_examples.py [--query Less] [--horizon 30]
"""

import argparse
from pathlib import Path

from skolemchain.analysis import verify_certificate
from skolemchain.degeneracy import find_nonzero_window, sml_decompose
from skolemchain.lrs import shift
from skolemchain.reduction import PreconditionError, Query, build_instance
from skolemchain.serialize import read_lrs

DATA = Path(__file__).resolve().parent.parent / "data"


def summarize(path: Path, query: Query, horizon: int) -> None:
    l = read_lrs(path)
    print(f"{path.name}: order {l.order}")
    for comp in sml_decompose(l):
        tag = f"  component offset={comp.offset} stride={comp.stride}"
        if comp.identically_zero:
            print(f"{tag}: identically zero")
            continue
        start = find_nonzero_window(comp.component)
        try:
            inst, cert = build_instance(shift(comp.component, start), query)
        except PreconditionError as exc:
            print(f"{tag}: no instance ({exc.condition})")
            continue
        ok = verify_certificate(shift(comp.component, start), inst, cert, horizon).overall
        print(f"{tag} shift={start}: dim {inst.dimension}, r={inst.threshold}, "
              f"rho={cert.rho}, verified={'yes' if ok else 'NO'}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--query", default="Equal")
    ap.add_argument("--horizon", type=int, default=30)
    args = ap.parse_args()
    for path in sorted(DATA.glob("*.json")):
        summarize(path, Query.parse(args.query), args.horizon)


if __name__ == "__main__":
    main()
