"""Remainder ratios for the l1 sign-flip witnesses and, for contrast, for Lp.

For x_n = a r^n the l1 ratio stays at 1 however small the direction, while
the Lp (p > 1) ratio along a fixed direction decays linearly in its size.
"""

import argparse

import numpy as np

from l1gateaux import GeoTailSequence, MeasureSpace, frechet_failure_witness, lp_norm, lp_remainder_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--kmax", type=int, default=30)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    x = GeoTailSequence.geometric(args.a, args.r)
    rng = np.random.default_rng(args.seed)
    n = 16
    S = MeasureSpace.counting(n)
    f = S.function((rng.uniform(0.1, 1, n) * rng.choice([-1, 1], n)).tolist())
    h = S.function(rng.standard_normal(n).tolist())
    h = h * (1 / lp_norm(S, h, args.p))

    print(f"{'k':>3} {'l1 ||h||':>12} {'l1 ratio':>10} {'Lp ||h||':>12} {'Lp ratio':>12}")
    for k in range(1, args.kmax + 1):
        w = frechet_failure_witness(x, k)
        hk = h * 2.0 ** -k
        print(f"{k:>3} {w.direction_norm:12.4e} {w.remainder_ratio:10.6f} "
              f"{2.0 ** -k:12.4e} {lp_remainder_ratio(S, f, args.p, hk):12.4e}")


if __name__ == "__main__":
    main()
