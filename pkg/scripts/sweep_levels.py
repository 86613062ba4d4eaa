"""Sweep psi over the parameter rectangle and report level sets.

    python3 scripts/sweep_levels.py --grid 100 100 --cap 16 --out sweep.csv
"""

import argparse
import time
from collections import Counter
from fractions import Fraction

from rotorlab.pwmap import fmt
from rotorlab.tracts import EmptyLevelSet, SweepTable, continuity_modulus, count_components, level_cells, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, nargs=2, default=(100, 100))
    ap.add_argument("--cap", type=int, default=16)
    ap.add_argument("--tol", type=Fraction, default=Fraction(1, 50))
    ap.add_argument("--values", default="0,1/4,1/3,2/5,3/7")
    ap.add_argument("--table", help="read an existing CSV instead of sweeping")
    ap.add_argument("--out")
    args = ap.parse_args()
    m, n = args.grid
    t = time.time()
    if args.table:
        table = SweepTable.from_csv(open(args.table).read(), m, n)
    else:
        table = sweep(m, n, args.cap)
        print(f"swept {m}x{n} in {time.time() - t:.1f}s")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(table.to_csv())
    counts = Counter(r.psi for r in table.rows)
    print("psi values:", ", ".join(f"{fmt(v)}:{c}" for v, c in sorted(counts.items())))
    print("unconverged:", sum(not r.converged for r in table.rows))
    for v in args.values.split(","):
        v = Fraction(v)
        cells = level_cells(table, v, args.tol)
        comps = count_components(cells) if cells else 0
        print(f"level {fmt(v)} (tol {fmt(args.tol)}): {len(cells)} cells, {comps} components")
    print("continuity modulus:", fmt(continuity_modulus(table)))


if __name__ == "__main__":
    main()
