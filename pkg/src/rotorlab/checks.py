"""Quick invariant suite behind ``rotorlab verify``.

Each check returns a list of failure strings; an empty list means it passed.
The checks are small versions of the property tests, sized to run in seconds.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .circlelift import Lift, lower_map, rotation_number, upper_map, sup_distance
from .combinatorics import OverRotationPair, all_cyclic_patterns, orp_forces
from .horseshoe import TruncationParams, h2, psi, realize_cycle_in_h2
from .overtwist import OvertwistSpec, family, overtwist_permutation
from .plinear import (build_plinear, is_overtwist, markov_graph, min_mean_closed_walk,
                      min_mean_cycle, pattern_points, rotation_interval_of_pattern)
from .tracts import leading_set, replay_sweep


def _coprime_pairs(qmax):
    for q in range(3, qmax + 1):
        for p in range(1, q):
            if gcd(p, q) == 1 and 2 * p < q:
                yield p, q


def check_family(qmax: int = 11) -> list[str]:
    bad = []
    for p, q in _coprime_pairs(qmax):
        for spec in family(p, q):
            pat = overtwist_permutation(spec)
            if not is_overtwist(pat) or rotation_interval_of_pattern(pat) != (Fraction(p, q), Fraction(1, 2)):
                bad.append(f"family {spec}")
    return bad


def check_karp(qmax: int = 6) -> list[str]:
    bad = []
    for q in range(2, qmax + 1):
        for pat in all_cyclic_patterns(q):
            g = markov_graph(build_plinear(pat), pattern_points(pat))
            if min_mean_cycle(g) != min_mean_closed_walk(g, 12):
                bad.append(f"karp {pat.image}")
    return bad


def check_realizations(qmax: int = 9) -> list[str]:
    bad = []
    for p, q in _coprime_pairs(qmax):
        for spec in family(p, q):
            pat = overtwist_permutation(spec)
            pts = realize_cycle_in_h2(pat)
            order = sorted(range(q), key=lambda i: pts[i])
            if any(h2(pts[i]) != pts[pat.image[i] - 1] for i in range(q)) or order != list(range(q)):
                bad.append(f"realize {spec}")
    return bad


def check_staircases(qmax: int = 9) -> list[str]:
    bad = []
    for p, q in _coprime_pairs(qmax):
        z = leading_set(p, q)
        if not (z.is_valid() and z.is_symmetric() and z.steps == 2 * (q - 2 * p + 1)):
            bad.append(f"stair {p}/{q}")
        if list(z.corners) != replay_sweep(p, q):
            bad.append(f"replay {p}/{q}")
    return bad


def check_forcing() -> list[str]:
    bad = []
    pairs = [OverRotationPair(p, q) for q in range(2, 13) for p in range(1, q // 2 + 1)]
    for x in pairs:
        if not orp_forces(x, x):
            bad.append(f"forcing not reflexive {x}")
        for y in pairs:
            if x != y and orp_forces(x, y) and orp_forces(y, x):
                bad.append(f"forcing not antisymmetric {x} {y}")
    return bad


def check_psi_anchors() -> list[str]:
    bad = []
    anchors = [((1, 0), Fraction(0)), ((Fraction(11, 13), Fraction(5, 13)), Fraction(1, 3)),
               ((Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2))]
    for (a, b), want in anchors:
        r = psi(TruncationParams(Fraction(a), Fraction(b)), 8)
        if r.value != want or not r.converged:
            bad.append(f"psi({a},{b}) = {r.value}")
    return bad


def check_lifts(count: int = 10, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    bad = []
    for k in range(count):
        xs = sorted({Fraction(rng.randint(1, 49), 50) for _ in range(4)})
        xs = [Fraction(0)] + xs + [Fraction(1)]
        y0 = Fraction(rng.randint(0, 50), 50)
        ys = [y0] + [y0 + x + Fraction(rng.randint(-20, 20), 50) for x in xs[1:-1]] + [y0 + 1]
        F = Lift(tuple(xs), tuple(ys))
        lo, hi = lower_map(F), upper_map(F)
        grid = sorted(set(xs) | set(lo.xs) | set(hi.xs))
        if any(not (lo(x) <= F(x) <= hi(x)) for x in grid):
            bad.append(f"hull order {k}")
        d = Fraction(1, 7)
        if sup_distance(lower_map(F.shift(d)), lo) > d or sup_distance(upper_map(F.shift(d)), hi) > d:
            bad.append(f"lipschitz {k}")
        if rotation_number(lo).lo > rotation_number(hi).hi:
            bad.append(f"interval order {k}")
    return bad


CHECKS = [
    ("overtwist family", check_family),
    ("karp vs closed walks", check_karp),
    ("H2 realizations", check_realizations),
    ("staircases", check_staircases),
    ("forcing", check_forcing),
    ("psi anchors", check_psi_anchors),
    ("circle lifts", check_lifts),
]


def run_all() -> list[tuple[str, list[str]]]:
    return [(name, fn()) for name, fn in CHECKS]
