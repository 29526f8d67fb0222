#!/usr/bin/env python3
"""Print the linking-property verdict for every built-in map preset.

Usage: python scripts/linking_matrix.py [--m-max 50] [--max-steps 300]
"""

import argparse
import time

from shadowlink.io import resolve_map
from shadowlink.shadowing import has_linking

PRESETS = [
    "tent:s=2",
    "tent:s=3/2",
    "tent:golden",
    "golden-core",
    "golden-restriction",
    "double-tent",
    "nucleus:depth=1",
    "nucleus:depth=2",
    "nucleus:depth=3",
    "two-sided:depth=1",
    "two-sided:depth=14",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=50)
    ap.add_argument("--max-steps", type=int, default=300)
    args = ap.parse_args()

    print("%-22s %-16s %8s" % ("preset", "verdict", "seconds"))
    for preset in PRESETS:
        m = resolve_map(preset)
        t0 = time.time()
        v = has_linking(m, m_max=args.m_max, max_steps=args.max_steps)
        print("%-22s %-16s %8.2f" % (preset, v.status, time.time() - t0))


if __name__ == "__main__":
    main()
