"""Random total-positivity checks of gradient matrices for several families."""

import argparse
from fractions import Fraction

import numpy as np

from majorder.cones import F_family, elem_family, jacobian_TP, tail_family


def random_point(rng, n):
    return tuple(sorted((Fraction(int(v), 4) for v in rng.integers(1, 40, size=n)), reverse=True))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    families = {
        "tails": tail_family(args.n),
        "elementary": elem_family(args.n),
        "F r=2": F_family(2, range(1, min(2 * args.n, 4) + 1)),
    }
    for name, fam in families.items():
        bad = 0
        first = None
        for _ in range(args.points):
            x = random_point(rng, args.n)
            rep = jacobian_TP(x, fam)
            if not rep.ok:
                bad += 1
                first = first or (x, rep.first_violation)
        print(f"{name:12s} {args.points} points, {bad} with a negative minor")
        if first:
            print("   first:", [str(v) for v in first[0]], first[1])


if __name__ == "__main__":
    main()
