"""Scan psi along a vertical line alpha = const to measure how thin each tract is.

    python3 scripts/tract_width.py --alpha 9/10 --lo 0.38 --hi 0.392 --steps 40
"""

import argparse
from fractions import Fraction

from rotorlab.horseshoe import TruncationParams, psi
from rotorlab.pwmap import fmt


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=Fraction, default=Fraction(9, 10))
    ap.add_argument("--lo", type=Fraction, default=Fraction(38, 100))
    ap.add_argument("--hi", type=Fraction, default=Fraction(392, 1000))
    ap.add_argument("--steps", type=int, default=40)
    args = ap.parse_args()
    runs = []
    for k in range(args.steps + 1):
        beta = args.lo + (args.hi - args.lo) * Fraction(k, args.steps)
        v = psi(TruncationParams(args.alpha, beta)).value
        if runs and runs[-1][0] == v:
            runs[-1][2] = beta
        else:
            runs.append([v, beta, beta])
    for v, a, b in runs:
        print(f"psi = {fmt(v):>6}  for beta in [{float(a):.5f}, {float(b):.5f}]")


if __name__ == "__main__":
    main()
