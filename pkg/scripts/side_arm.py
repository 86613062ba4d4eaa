"""psi near the side arm: how fast it falls to 0.

    python3 scripts/side_arm.py
"""

from fractions import Fraction as F

from rotorlab.horseshoe import TruncationParams, psi
from rotorlab.pwmap import fmt


def main():
    print("beta = 0, alpha -> 2/3 from below")
    for k in range(1, 6):
        a = F(2, 3) - F(1, 10**k)
        print(f"  alpha = 2/3 - 1e-{k}: psi = {fmt(psi(TruncationParams(a, F(0))).value)}")
    print("alpha = 2/3, beta -> 0")
    for k in range(1, 6):
        b = F(1, 10**k)
        print(f"  beta = 1e-{k}: psi = {fmt(psi(TruncationParams(F(2, 3), b)).value)}")
    print("beta = 1/4, alpha -> 1")
    for k in range(1, 5):
        a = 1 - F(1, 10**k)
        print(f"  alpha = 1 - 1e-{k}: psi = {fmt(psi(TruncationParams(a, F(1, 4))).value)}")


if __name__ == "__main__":
    main()
