"""Search for pairs ordered by Psi but not by the F family, and the reverse.

Prints one summary line per target; findings go to a JSON-lines file when
``--out`` is given.
"""

import argparse
import json
import os

from majorder.core import jsonable
from majorder.scan import ScanConfig, collect


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--targets", nargs="+", default=["L_not_F", "F_not_L"])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--rmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out")
    args = ap.parse_args()

    sink = open(args.out, "w") if args.out else None
    for target in args.targets:
        cfg = ScanConfig(target, n=args.n, n_min=args.n_min, samples=args.samples,
                         seed=args.seed, rmax=args.rmax, workers=args.workers)
        findings, summary = collect(cfg)
        print(f"{target:10s} samples={summary['samples']} checked={summary['checked']} "
              f"findings={summary['findings']} marginal={summary['marginal_findings']}")
        for rec in findings[:3]:
            print("   x =", [str(v) for v in rec["x"]], " y =", [str(v) for v in rec["y"]])
        if sink:
            for rec in findings:
                sink.write(json.dumps(jsonable({"target": target, **rec})) + "\n")
    if sink:
        sink.close()


if __name__ == "__main__":
    main()
