#!/usr/bin/env python3
"""Ladder-system experiments: random certified pseudo-orbits shadowed at
several eps, exhaustive delta-chains inside the limit level, and the
omega-limit/ICT separation.

Usage: python scripts/ladder_experiments.py --seed 0 [--orbits 1000] \
           [--length 100] [--prefix-max 12]
"""

import argparse
import random
import time

from shadowlink.scalars import Q, exact_cmp
from shadowlink.symbolic import (
    INF,
    LadderPoint,
    SymSeq,
    ict_chain,
    ladder_delta,
    ladder_metric,
    ladder_omega,
    ladder_shadow,
    random_ladder_pseudo_orbit,
    zeros,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--orbits", type=int, default=1000)
    ap.add_argument("--length", type=int, default=100)
    ap.add_argument("--prefix-max", type=int, default=12)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for eps in (Q(1, 2), Q(1, 4), Q(1, 8)):
        delta, k = ladder_delta(eps)
        t0 = time.time()
        for _ in range(args.orbits):
            po, d = random_ladder_pseudo_orbit(rng, eps, args.length)
            ladder_shadow(po, d, eps)  # raises unless verified
        print("eps=%s  delta=%s  k=%d  %d orbits shadowed  %.2fs"
              % (eps, delta, k, args.orbits, time.time() - t0))

    points = [zeros()] + [SymSeq(("0",) * j + ("1",), ("0",))
                          for j in range(args.prefix_max)]
    t0 = time.time()
    n_chains = 0
    for xi in points:
        for eta in points:
            ict_chain(xi, eta, Q(1, 2 ** 10))
            n_chains += 1
    print("ict chains at delta=2^-10: %d/%d certified  %.2fs"
          % (n_chains, len(points) ** 2, time.time() - t0))

    singleton = all(
        ladder_omega(LadderPoint(INF, p)) == [LadderPoint(INF, zeros())]
        for p in points)
    sep = ladder_metric(LadderPoint(INF, zeros()),
                        LadderPoint(INF, SymSeq(("1",), ("0",))))
    print("level-inf omega-limits all singleton: %s" % singleton)
    print("separation inside the limit-level ICT set: %s (>= 1/2: %s)"
          % (sep, exact_cmp(sep, Q(1, 2)) >= 0))


if __name__ == "__main__":
    main()
