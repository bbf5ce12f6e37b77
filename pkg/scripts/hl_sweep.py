"""Compare Toeplitz eigenvalues of D_N against every +-1 pattern of length N."""

import argparse
import collections

from majorder.spectra import gabriel_check, sweep_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=5)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--csv", help="write all rows here")
    args = ap.parse_args()

    rows = sweep_rows(args.N, args.dims)
    tally = collections.Counter((rel, d, verdict) for _, d, rel, verdict, _ in rows)
    for (rel, d, verdict), count in sorted(tally.items()):
        print(f"dim={d} {rel:8s} {verdict:16s} {count}")
    bad = [r for r in gabriel_check(args.N) if not r["ok"]]
    print(f"norm inequalities p=1,2,3: {len(bad)} violations")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("pattern,dim,relation,verdict,margin\n")
            for row in rows:
                fh.write(",".join(str(v) for v in row) + "\n")


if __name__ == "__main__":
    main()
