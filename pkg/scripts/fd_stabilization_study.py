"""How early does the finite-difference quotient of the L1 norm freeze?

For random instances, compares the step at which the quotient sequence
plateaus with the step predicted from the smallest sign-stability radius.
"""

import argparse
import math

import numpy as np

from l1gateaux import FDSchedule, MeasureSpace, fd_directional, stability_radius


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--atoms", type=int, default=16)
    ap.add_argument("--zero-rate", type=float, default=0.2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    sched = FDSchedule()
    late = never = 0
    for _ in range(args.trials):
        n = args.atoms
        S = MeasureSpace.from_weights((10 - rng.uniform(0, 10, n)).tolist())
        fv = rng.uniform(-10, 10, n)
        fv[rng.random(n) < args.zero_rate] = 0
        f, h = S.function(fv.tolist()), S.function(rng.uniform(-10, 10, n).tolist())
        r = fd_directional(S, f, h, sched)
        delta = stability_radius(S, f, h)
        # first k with t_k <= 2 delta, where the quotient becomes exact
        predicted = 0 if delta == math.inf else max(0, math.ceil(math.log(2 * delta / sched.t0, sched.shrink)))
        if not r.stabilized:
            never += 1
        elif r.stabilization_step > predicted:
            late += 1
    print(f"trials={args.trials} not stabilized={never} plateau later than predicted={late}")


if __name__ == "__main__":
    main()
