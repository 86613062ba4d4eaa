"""Acceptance criteria 1-12.

Each criterion is checked at its stated tolerance and time budget; one
PASS/FAIL line per criterion is printed at the end of the pytest run (and
by ``python3 tests/test_acceptance.py``).
"""

import contextlib
import io
import json
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from rotorlab.circlelift import Lift, lower_map, rotation_interval, sup_distance, upper_map
from rotorlab.cli import main as cli_main
from rotorlab.combinatorics import (CyclicPattern, OverRotationPair, all_cyclic_patterns, orp_forces,
                                    over_rotation_pair)
from rotorlab.horseshoe import TruncationParams, extrema_images, h2, psi, realize_cycle_in_h2
from rotorlab.overtwist import OvertwistSpec, family, overtwist_permutation
from rotorlab.plinear import (build_plinear, forced_cycles, is_overtwist, markov_graph, min_mean_closed_walk,
                              min_over_rotation, pattern_points, rotation_interval_of_pattern)
from rotorlab.tracts import (FOCAL, EmptyLevelSet, ParamPoint, distance2, leading_set, level_set_connected,
                             staircases_disjoint, sweep)

from oracles import image_interval_rotation, random_lift

F = Fraction
HALF = F(1, 2)
RESULTS: dict[int, tuple[bool, str]] = {}


def coprime_pairs(qmax):
    return [(p, q) for q in range(3, qmax + 1) for p in range(1, q) if gcd(p, q) == 1 and 2 * p < q]


def record(n: int, ok: bool, detail: str, elapsed: float, budget: float):
    within = elapsed < budget
    RESULTS[n] = (ok and within, f"{detail}; {elapsed:.3g}s (budget {budget:g}s)")
    assert ok, detail
    assert within, f"criterion {n} took {elapsed:.3g}s, budget {budget:g}s"


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_01_gamma_3_11():
    def run():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["otw", "gen", "3", "11", "3"])
        return code, json.loads(buf.getvalue())
    (code, obj), _ = timed(run)  # warm-up: imports and first-call caches
    t = time.perf_counter()
    pat = overtwist_permutation(OvertwistSpec(3, 11, 3))
    elapsed = time.perf_counter() - t
    orp = over_rotation_pair(pat)
    ok = (code == 0 and obj["image"] == [4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8]
          and pat.image == tuple(obj["image"]) and (orp.p, orp.q) == (3, 11)
          and CyclicPattern(pat.image).q == 11)
    record(1, ok, f"image {obj['image']} pair ({orp.p},{orp.q})", elapsed, 1e-3)


def test_criterion_02_family_is_overtwist():
    def run():
        bad = []
        for p, q in coprime_pairs(15):
            for spec in family(p, q):
                pat = overtwist_permutation(spec)
                if not is_overtwist(pat) or rotation_interval_of_pattern(pat) != (F(p, q), HALF):
                    bad.append(spec)
        return bad
    bad, el = timed(run)
    n = sum(len(family(p, q)) for p, q in coprime_pairs(15))
    record(2, not bad, f"{n} family members, {len(bad)} failures", el, 30)


def test_criterion_03_h2_realizations():
    realize_cycle_in_h2(overtwist_permutation(OvertwistSpec(1, 3, 0)))  # warm-up
    g0 = overtwist_permutation(OvertwistSpec(1, 3, 0))
    g1 = overtwist_permutation(OvertwistSpec(1, 3, 1))
    t = time.perf_counter()
    a, b = realize_cycle_in_h2(g0), realize_cycle_in_h2(g1)
    el = time.perf_counter() - t
    ok = a == [F(5, 13), F(7, 13), F(11, 13)] and b == [F(2, 13), F(6, 13), F(8, 13)]
    for pat, pts in ((g0, a), (g1, b)):
        ok &= all(h2(pts[j]) == pts[pat.image[j] - 1] for j in range(3))
    record(3, ok, f"{[str(x) for x in a]} {[str(x) for x in b]}", el, 1e-3)


def test_criterion_04_staircase_one_third():
    leading_set(1, 3)
    z, el = timed(lambda: leading_set(1, 3))
    ok = (z.steps == 4 and (F(11, 13), F(5, 13)) in z.corners and (F(8, 13), F(2, 13)) in z.corners
          and z.is_symmetric() and z.treads == z.rises[::-1]
          and extrema_images(overtwist_permutation(OvertwistSpec(1, 3, 0))) == (F(11, 13), F(5, 13))
          and extrema_images(overtwist_permutation(OvertwistSpec(1, 3, 1))) == (F(8, 13), F(2, 13)))
    record(4, ok, f"{z.steps} steps, treads {[str(x) for x in z.treads]}, rises {[str(x) for x in z.rises]}", el, 0.01)


def test_criterion_05_extrema_monotone_in_r():
    def run():
        bad = []
        for p, q in coprime_pairs(11):
            ext = [extrema_images(overtwist_permutation(s)) for s in family(p, q)]
            for r, ((M0, m0), (M1, m1)) in enumerate(zip(ext, ext[1:])):
                if not (M1 < M0 and m1 < m0):
                    bad.append((p, q, r))
        return bad
    bad, el = timed(run)
    record(5, not bad, f"both coordinates strictly decreasing in r; {len(bad)} violations", el, 60)


def test_criterion_06_distance_and_disjointness():
    def run():
        pairs = coprime_pairs(9)
        stairs = {pq: leading_set(*pq) for pq in pairs}
        bad = 0
        for a in pairs:
            for b in pairs:
                if F(*a) < F(*b):
                    if not distance2(FOCAL, stairs[a]) < distance2(FOCAL, stairs[b]):
                        bad += 1
                    if not staircases_disjoint(stairs[a], stairs[b]):
                        bad += 1
        return bad, len(pairs)
    (bad, n), el = timed(run)
    record(6, bad == 0, f"{n} staircases, {bad} violations", el, 60)


def test_criterion_07_psi_anchors():
    def run():
        r0 = psi(TruncationParams(F(1), F(0)), 8)
        base = [psi(TruncationParams(a, b), 8) for a, b in [(HALF, F(0)), (HALF, F(1, 4)), (F(3, 4), HALF), (F(1), HALF)]]
        r1 = psi(TruncationParams(F(11, 13), F(5, 13)), 8)
        return r0, base, r1
    (r0, base, r1), el = timed(run)
    ok = (r0.value == 0 and r0.converged and all(b.value == HALF for b in base)
          and r1.value == F(1, 3) and r1.converged)
    record(7, ok, f"psi(1,0)={r0.value} psi(11/13,5/13)={r1.value} base={[str(b.value) for b in base]}", el, 10)


def test_criterion_08_ray_monotonicity():
    rng = random.Random(8)

    def run():
        violations = 0
        for _ in range(200):
            # direction (-u, v) from the focal point; walk until the far edge
            u, v = F(rng.randint(1, 1000)), F(rng.randint(1, 1000))
            smax = min(HALF / u, HALF / v)
            vals = []
            for k in range(1, 21):
                s = smax * k / 20
                vals.append(psi(TruncationParams(1 - u * s, v * s), 16).value)
            violations += sum(1 for a, b in zip(vals, vals[1:]) if b < a)
        return violations
    bad, el = timed(run)
    record(8, bad == 0, f"200 rays x 20 points, {bad} violations", el, 600)


@pytest.fixture(scope="module")
def grid100():
    return timed(lambda: sweep(100, 100, cap=16))


def test_criterion_09_level_sets(grid100):
    table, el = grid100
    t = time.perf_counter()
    report, ok = [], True
    for v in [F(1, 3), F(2, 5), F(1, 4), F(3, 7)]:
        try:
            conn = level_set_connected(table, v, F(1, 50))
            report.append(f"{v}:{'connected' if conn else 'DISCONNECTED'}")
            ok &= conn
        except EmptyLevelSet:
            report.append(f"{v}:EMPTY")
            ok = False
    el += time.perf_counter() - t
    record(9, ok, " ".join(report), el, 1800)


def test_criterion_10_karp_vs_brute_force():
    def run():
        bad, n = 0, 0
        for q in range(2, 10):
            for pat in all_cyclic_patterns(q):
                g = markov_graph(build_plinear(pat), pattern_points(pat))
                n += 1
                if min_over_rotation(g) != min_mean_closed_walk(g, 12):
                    bad += 1
        return bad, n
    (bad, n), el = timed(run)
    record(10, bad == 0, f"{n} patterns, {bad} mismatches", el, 300)


def test_criterion_11_circle_lifts():
    rng = random.Random(11)

    def run():
        worst, bad = 0.0, []
        for k in range(50):
            Fm = random_lift(rng, knots=6, amp=rng.choice([10, 40, 120]))
            lo, hi = lower_map(Fm), upper_map(Fm)
            pts = sorted(set(Fm.xs) | set(lo.xs) | set(hi.xs))
            pts += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
            if any(not lo(x) <= Fm(x) <= hi(x) for x in pts):
                bad.append((k, "sandwich"))
            d = F(rng.randint(-40, 40), 97)
            if (sup_distance(lower_map(Fm.shift(d)), lo) > abs(d)
                    or sup_distance(upper_map(Fm.shift(d)), hi) > abs(d)):
                bad.append((k, "lipschitz"))
            if lower_map(lo) != lo or upper_map(lo) != lo or lower_map(hi) != hi:
                bad.append((k, "monotone identity"))
            rl, ru = rotation_interval(Fm)
            a, b = image_interval_rotation(Fm, 2000)
            err = max(abs(float(rl.value) - a), abs(float(ru.value) - b))
            worst = max(worst, err)
            if err > 1e-3:
                bad.append((k, f"rotation {err:.2e}"))
        return worst, bad
    (worst, bad), el = timed(run)
    record(11, not bad, f"50 lifts, worst endpoint error {worst:.2e}, failures {bad[:3]}", el, 120)


def test_criterion_12_forcing():
    def run():
        two = OverRotationPair(1, 2)
        ok, notes = True, []
        for spec in family(1, 3):
            pat = overtwist_permutation(spec)
            found = {over_rotation_pair(c) for c in forced_cycles(pat, 12) if c.q > 1}
            ok &= two in found and orp_forces(OverRotationPair(1, 3), two)
            notes.append(f"G{spec.r},1/3 forces (1,2): {two in found}")
        pat = CyclicPattern((2, 4, 6, 5, 3, 1))
        a = over_rotation_pair(pat)
        found = {over_rotation_pair(c) for c in forced_cycles(pat, 12) if c.q > 1}
        third = OverRotationPair(1, 3)
        ok &= (a.p, a.q) == (2, 6) and third in found and orp_forces(a, third)
        notes.append(f"{pat.image} pair ({a.p},{a.q}) forces (1,3): {third in found}")
        return ok, notes
    (ok, notes), el = timed(run)
    record(12, ok, "; ".join(notes), el, 60)


def summary_lines():
    lines = []
    for n in range(1, 13):
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}: {detail}")
        else:
            lines.append(f"ACCEPTANCE {n:2d} NOT RUN")
    return lines


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
