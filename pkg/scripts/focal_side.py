"""Compare the geometric side of Z_{p/q} with psi on a grid.

Counts grid points on the focal side where psi already equals p/q, and
checks that the far side and the staircase itself always agree with psi.

    python3 scripts/focal_side.py --p 1 --q 3 --grid 60
"""

import argparse
from collections import Counter
from fractions import Fraction

from rotorlab.tracts import ParamPoint, classify_point, grid_points, leading_set


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--q", type=int, default=3)
    ap.add_argument("--grid", type=int, default=60)
    args = ap.parse_args()
    stair = leading_set(args.p, args.q)
    tally = Counter()
    examples = []
    for _, _, pt in grid_points(args.grid, args.grid):
        c = classify_point(args.p, args.q, pt, cap=16, stair=stair)
        tally[(c.label, c.agrees)] += 1
        if c.label == "in_U" and not c.agrees and len(examples) < 5:
            examples.append(pt.xy)
    for (label, agrees), n in sorted(tally.items()):
        print(f"{label:5s} agrees={agrees}: {n}")
    for a, b in examples:
        print(f"  focal side with psi = {args.p}/{args.q}: ({a}, {b})")


if __name__ == "__main__":
    main()
