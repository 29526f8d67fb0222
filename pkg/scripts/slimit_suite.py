#!/usr/bin/env python3
"""Batch s-limit tracing experiment: seeded asymptotic pseudo-orbits with a
dyadic error schedule, each traced and re-verified exactly.

Usage: python scripts/slimit_suite.py --map tent:s=2 --count 20 --seed 0 \
           [--horizon 60] [--eps 1/10]
"""

import argparse
import time

from shadowlink.io import resolve_map
from shadowlink.pseudo import asymptotic_orbit, geometric_schedule
from shadowlink.scalars import Q, parse_scalar
from shadowlink.tracing import TracingError, slimit_trace, verify_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--map", required=True)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--horizon", type=int, default=60)
    ap.add_argument("--eps", default="1/10")
    args = ap.parse_args()

    m = resolve_map(args.map)
    eps = parse_scalar(args.eps)
    sched = geometric_schedule(Q(1, 2), Q(1, 2), args.horizon)
    x0 = m.lo + (m.hi - m.lo) / 3

    verified = failed = 0
    promotions = []
    t0 = time.time()
    for i in range(args.count):
        po = asymptotic_orbit(m, x0, args.horizon, sched,
                              seed=args.seed + i)
        try:
            cert = slimit_trace(m, po, eps)
        except TracingError as exc:
            failed += 1
            print("seed %d: FAILED (%s)" % (args.seed + i, exc))
            continue
        assert verify_certificate(m, po, cert)
        verified += 1
        promotions.append(cert.promotions)

    print("map: %s" % args.map)
    print("certificates verified: %d/%d" % (verified, args.count))
    print("tracing failures: %d" % failed)
    if promotions:
        print("promotions min/mean/max: %d / %.2f / %d"
              % (min(promotions), sum(promotions) / len(promotions),
                 max(promotions)))
    print("elapsed: %.2fs" % (time.time() - t0))


if __name__ == "__main__":
    main()
