"""Look for downward-closed index sets whose H_S gradients break the 3x3 minor test."""

import argparse

import numpy as np

from majorder.cones import exercise_tp3_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--sets", type=int, default=200)
    ap.add_argument("--points", type=int, default=20)
    args = ap.parse_args()

    hit = exercise_tp3_scan(np.random.default_rng(args.seed), sets=args.sets, points=args.points)
    if hit is None:
        print("no negative determinant found")
        return
    print("generators:", hit["generators"], "k =", hit["k"])
    print("members:", hit["members"])
    print("x =", [str(v) for v in hit["x"]], " tp3 =", hit["tp3"])


if __name__ == "__main__":
    main()
