import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rotorlab.circlelift import (Lift, lower_map, periodic_rotation, rotation_interval, rotation_number,
                                 sup_distance, upper_map)
from oracles import float_eval, image_interval_rotation, random_lift

F = Fraction


def lifts(knots=5, amp=60):
    return st.integers(0, 2**32).map(lambda s: random_lift(random.Random(s), knots, amp))


def brute_lower(Fm: Lift, x: Fraction) -> Fraction:
    # inf over y >= x is attained at x or at a knot in [x, x + 1]
    cands = [Fm(x)]
    n = math.floor(x)
    for k in (n, n + 1):
        cands += [Fm(t + k) for t in Fm.xs if x <= t + k <= x + 1]
    return min(cands)


def brute_upper(Fm: Lift, x: Fraction) -> Fraction:
    cands = [Fm(x)]
    n = math.floor(x)
    for k in (n - 1, n):
        cands += [Fm(t + k) for t in Fm.xs if x - 1 <= t + k <= x]
    return max(cands)


TENT = Lift((F(0), F(1, 2), F(1)), (F(0), F(3, 2), F(1)))
PLATEAU3 = Lift((F(0), F(1, 6), F(1, 3), F(2, 3), F(1)), (F(1, 3), F(1, 3), F(2, 3), F(1), F(4, 3)))


def test_lift_validation():
    with pytest.raises(ValueError):
        Lift((F(0), F(1)), (F(0), F(2)))
    with pytest.raises(ValueError):
        Lift((F(0), F(1, 2)), (F(0), F(1)))
    with pytest.raises(ValueError):
        lower_map(Lift((F(0), F(1)), (F(0), F(2)), degree=2))
    assert TENT(F(3, 2)) == F(5, 2) and TENT(F(-1, 2)) == F(1, 2)


def test_json_round_trip():
    assert Lift.from_json(TENT.to_json()) == TENT


def test_monotone_hulls_are_identity():
    assert lower_map(PLATEAU3) == PLATEAU3.simplified()
    assert upper_map(PLATEAU3) == PLATEAU3.simplified()
    rot = Lift.rotation(F(2, 7))
    assert lower_map(rot) == rot and upper_map(rot) == rot


def test_tent_hulls():
    lo, hi = lower_map(TENT), upper_map(TENT)
    assert lo.is_monotone() and hi.is_monotone()
    grid = [F(k, 60) for k in range(-60, 121)]
    for x in grid:
        assert lo(x) == brute_lower(TENT, x)
        assert hi(x) == brute_upper(TENT, x)
        assert lo(x) <= TENT(x) <= hi(x)


def test_rigid_rotation_numbers():
    assert rotation_number(Lift.rotation(F(2, 5))).lo == F(2, 5)
    lo, hi = rotation_interval(Lift.rotation(F(2, 5)))
    assert lo.exact and hi.exact and lo.lo == hi.lo == F(2, 5)


def test_plateau_period_three():
    G = PLATEAU3
    assert G(G(G(F(0)))) == 1
    r = rotation_number(G)
    assert r.exact and r.lo == F(1, 3)


def test_long_period_falls_back_to_enclosure():
    r = rotation_number(Lift.rotation(F(1, 97)))
    assert not r.exact
    assert r.lo <= F(1, 97) <= r.hi
    assert r.hi - r.lo <= F(1, 10**4)


def test_irrational_type_enclosure():
    G = Lift((F(0), F(1, 4), F(3, 4), F(1)), (F(1, 7), F(1, 2), F(6, 7), F(8, 7)))
    assert G.is_monotone()
    r = rotation_number(G, precision=10**4)
    assert r.hi - r.lo <= F(1, 10**4)
    xs, ys = [float(x) for x in G.xs], [float(y) for y in G.ys]
    x, n = 0.0, 200000
    for _ in range(n):
        x = float_eval(xs, ys, x)
    assert float(r.lo) - 2 / n <= x / n <= float(r.hi) + 2 / n


def test_rotation_needs_monotone():
    with pytest.raises(ValueError):
        rotation_number(TENT)


def test_tent_interval_matches_oracle():
    lo, hi = rotation_interval(TENT)
    a, b = image_interval_rotation(TENT)
    assert abs(float(lo.value) - a) < 1e-3 and abs(float(hi.value) - b) < 1e-3


@settings(max_examples=40, deadline=None)
@given(lifts())
def test_hull_sandwich_and_monotone(Fm):
    lo, hi = lower_map(Fm), upper_map(Fm)
    assert lo.is_monotone() and hi.is_monotone()
    pts = sorted(set(Fm.xs) | set(lo.xs) | set(hi.xs))
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    for x in pts + mids:
        assert lo(x) <= Fm(x) <= hi(x)
        assert lo(x) == brute_lower(Fm, x)
        assert hi(x) == brute_upper(Fm, x)


@settings(max_examples=40, deadline=None)
@given(lifts(), st.integers(0, 2**32))
def test_hulls_are_order_preserving(Fm, seed):
    rng = random.Random(seed)
    # G = F + a nonnegative periodic bump
    xs = sorted(set(Fm.xs) | {F(rng.randint(1, 99), 100) for _ in range(3)})
    bump = {x: F(rng.randint(0, 30), 100) for x in xs}
    bump[xs[-1]] = bump[xs[0]]
    G = Lift(tuple(xs), tuple(Fm(x) + bump[x] for x in xs))
    pts = sorted(set(xs) | set(lower_map(G).xs) | set(lower_map(Fm).xs) | set(upper_map(G).xs) | set(upper_map(Fm).xs))
    for x in pts:
        assert lower_map(Fm)(x) <= lower_map(G)(x)
        assert upper_map(Fm)(x) <= upper_map(G)(x)


@settings(max_examples=40, deadline=None)
@given(lifts(), st.integers(-50, 50), st.integers(0, 2**32))
def test_hulls_are_one_lipschitz(Fm, d, seed):
    delta = F(d, 97)
    G = Fm.shift(delta)
    assert sup_distance(lower_map(G), lower_map(Fm)) <= abs(delta)
    assert sup_distance(upper_map(G), upper_map(Fm)) <= abs(delta)
    # a non-constant perturbation as well
    rng = random.Random(seed)
    noise = [F(rng.randint(-20, 20), 100) for _ in Fm.xs]
    noise[-1] = noise[0]
    H = Lift(Fm.xs, tuple(y + e for y, e in zip(Fm.ys, noise)))
    eps = sup_distance(H, Fm)
    assert sup_distance(lower_map(H), lower_map(Fm)) <= eps
    assert sup_distance(upper_map(H), upper_map(Fm)) <= eps


def _flat_near(G: Lift, x: Fraction) -> bool:
    t = x - math.floor(x)
    xs = G.xs
    slopes = [(G.ys[i + 1] - G.ys[i]) for i in range(len(xs) - 1)]
    for i in range(len(xs) - 1):
        if xs[i] < t < xs[i + 1]:
            return slopes[i] == 0
        if t == xs[i]:
            left = slopes[i - 1] if i > 0 else slopes[-1]
            return slopes[i] == 0 and left == 0
    return slopes[-1] == 0 and slopes[0] == 0


@settings(max_examples=40, deadline=None)
@given(lifts())
def test_lower_map_constant_where_it_differs(Fm):
    lo, hi = lower_map(Fm), upper_map(Fm)
    pts = sorted(set(Fm.xs) | set(lo.xs))
    sample = pts + [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    for x in sample:
        if lo(x) != Fm(x):
            assert _flat_near(lo, x)
        if hi(x) != Fm(x):
            assert _flat_near(hi, x)


@settings(max_examples=30, deadline=None)
@given(lifts(), st.integers(-3, 3))
def test_rotation_commutes_with_translation(Fm, k):
    G = lower_map(Fm)
    a, b = rotation_number(G, 1000), rotation_number(G.shift(k), 1000)
    assert b.lo == a.lo + k and b.hi == a.hi + k


def test_periodic_detection_cap():
    assert periodic_rotation(Lift.rotation(F(3, 8)), period_cap=8) == F(3, 8)
    assert periodic_rotation(Lift.rotation(F(3, 8)), period_cap=7) is None
