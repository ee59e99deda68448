"""Enumerate small atomic spaces and count where the L1 norm is differentiable.

Prints, per number of atoms, how many (space, f) pairs are differentiable, how
many of those lie in G, and how many spaces contain an infinite atom when infinite weights
are allowed.
"""

import argparse
import itertools

from l1gateaux import INF, MeasureSpace, classify, in_class_g


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-atoms", type=int, default=4)
    ap.add_argument("--with-inf", action="store_true", help="also use infinite weights")
    args = ap.parse_args()

    weights = [0.0, 0.5, 1.0] + ([INF] if args.with_inf else [])
    print(f"{'atoms':>5} {'pairs':>7} {'diff':>7} {'in G':>7} {'diff & !G':>10}")
    for n in range(args.max_atoms + 1):
        pairs = diff = in_g = off = 0
        for ws in itertools.product(weights, repeat=n):
            S = MeasureSpace.from_weights(list(ws))
            for vs in itertools.product([-1.0, 0.0, 1.0], repeat=n):
                if any(w == INF and v != 0 for w, v in zip(ws, vs)):
                    continue
                f = S.function(list(vs))
                d = classify(S, f).differentiable
                g = in_class_g(S, f)
                pairs += 1
                diff += d
                in_g += g
                off += d and not g
        print(f"{n:>5} {pairs:>7} {diff:>7} {in_g:>7} {off:>10}")


if __name__ == "__main__":
    main()
