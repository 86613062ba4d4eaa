"""Degree-one circle-map lifts: lower/upper monotone maps and rotation numbers.

A lift is stored by its knots on the fundamental domain [0, 1]; values may be
any rationals, and F(x + 1) = F(x) + degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Sequence

from .pwmap import frac, fmt


@dataclass(frozen=True)
class Lift:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]
    degree: int = 1

    def __post_init__(self):
        xs = tuple(frac(x) for x in self.xs)
        ys = tuple(frac(y) for y in self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if len(xs) != len(ys) or len(xs) < 2 or xs[0] != 0 or xs[-1] != 1:
            raise ValueError("knots must run from 0 to 1 with one value each")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("knots must be strictly increasing")
        if ys[-1] != ys[0] + self.degree:
            raise ValueError("F(1) must equal F(0) + degree")

    def __call__(self, x) -> Fraction:
        x = frac(x)
        n = floor(x)
        t = x - n
        i = _segment(self.xs, t)
        x0, x1, y0, y1 = self.xs[i], self.xs[i + 1], self.ys[i], self.ys[i + 1]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0) + n * self.degree

    def shift(self, c) -> "Lift":
        c = frac(c)
        return Lift(self.xs, tuple(y + c for y in self.ys), self.degree)

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.ys, self.ys[1:]))

    def simplified(self) -> "Lift":
        xs, ys = [self.xs[0]], [self.ys[0]]
        for i in range(1, len(self.xs) - 1):
            s0 = (self.ys[i] - ys[-1]) / (self.xs[i] - xs[-1])
            s1 = (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
            if s0 != s1:
                xs.append(self.xs[i])
                ys.append(self.ys[i])
        xs.append(self.xs[-1])
        ys.append(self.ys[-1])
        return Lift(tuple(xs), tuple(ys), self.degree)

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree, "xs": [fmt(x) for x in self.xs],
                           "ys": [fmt(y) for y in self.ys]})

    @classmethod
    def from_json(cls, text) -> "Lift":
        obj = json.loads(text) if isinstance(text, str) else text
        return cls(tuple(Fraction(x) for x in obj["xs"]), tuple(Fraction(y) for y in obj["ys"]),
                   int(obj.get("degree", 1)))

    @classmethod
    def rotation(cls, c) -> "Lift":
        c = frac(c)
        return cls((Fraction(0), Fraction(1)), (c, c + 1))


def _segment(xs: Sequence[Fraction], t: Fraction) -> int:
    lo, hi = 0, len(xs) - 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if xs[mid] <= t:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _require_degree_one(F: Lift):
    if F.degree != 1:
        raise ValueError("only degree-one lifts are supported")


def lower_map(F: Lift) -> Lift:
    """F_l(x) = inf{F(y) : y >= x}, exactly."""
    _require_degree_one(F)
    cap = min(F.ys) + 1  # inf over y >= 1
    knots = [(F.xs[-1], min(F.ys[-1], cap))]
    cur = knots[0][1]
    for i in range(len(F.xs) - 2, -1, -1):
        x0, x1, y0, y1 = F.xs[i], F.xs[i + 1], F.ys[i], F.ys[i + 1]
        if y0 < y1 and y0 < cur:
            # running min follows F once F drops below the current level
            if y1 > cur:
                xc = x0 + (cur - y0) * (x1 - x0) / (y1 - y0)
                knots.append((xc, cur))
            knots.append((x0, y0))
            cur = y0
        else:
            cur = min(cur, y0, y1)
            knots.append((x0, cur))
    knots.reverse()
    return _from_knots(knots)


def upper_map(F: Lift) -> Lift:
    """F_u(x) = sup{F(y) : y <= x}, exactly."""
    _require_degree_one(F)
    floor_ = max(F.ys) - 1  # sup over y <= 0
    knots = [(F.xs[0], max(F.ys[0], floor_))]
    cur = knots[0][1]
    for i in range(1, len(F.xs)):
        x0, x1, y0, y1 = F.xs[i - 1], F.xs[i], F.ys[i - 1], F.ys[i]
        if y1 > y0 and y1 > cur:
            if y0 < cur:
                xc = x0 + (cur - y0) * (x1 - x0) / (y1 - y0)
                knots.append((xc, cur))
            knots.append((x1, y1))
            cur = y1
        else:
            cur = max(cur, y0, y1)
            knots.append((x1, cur))
    return _from_knots(knots)


def _from_knots(knots) -> Lift:
    xs, ys = [], []
    for x, y in knots:
        if xs and xs[-1] == x:
            continue
        xs.append(x)
        ys.append(y)
    return Lift(tuple(xs), tuple(ys)).simplified()


@dataclass(frozen=True)
class RotationNumber:
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __str__(self):
        return fmt(self.lo) if self.exact else f"[{fmt(self.lo)}, {fmt(self.hi)}]"


def _compose(G: Lift, knots: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Knots of G o H where H is monotone with the given knots on [0, 1]."""
    out = [(knots[0][0], G(knots[0][1]))]
    for (a, ya), (b, yb) in zip(knots, knots[1:]):
        if yb > ya:
            lo_n, hi_n = floor(ya), floor(yb)
            for n in range(lo_n, hi_n + 1):
                for k in G.xs:
                    t = k + n
                    if ya < t < yb:
                        x = a + (t - ya) * (b - a) / (yb - ya)
                        out.append((x, G(t)))
        out.append((b, G(yb)))
    return sorted(dict(out).items())


def _power_search(G: Lift, period_cap: int, max_knots: int):
    """Look for p/q with G^q(x) = x + p; also return the knots of the last power built."""
    knots = list(zip(G.xs, G.ys))
    for q in range(1, period_cap + 1):
        disp = [y - x for x, y in knots]
        p = ceil(min(disp))
        if p <= max(disp):
            return Fraction(p, q), knots, q
        if q == period_cap or len(knots) > max_knots:
            return None, knots, q
        knots = _compose(G, knots)
    raise AssertionError("unreachable")


def periodic_rotation(G: Lift, period_cap: int = 64, max_knots: int = 20000) -> Fraction | None:
    """p/q if some x has G^q(x) = x + p with q <= period_cap."""
    return _power_search(G, period_cap, max_knots)[0]


def rotation_number(G: Lift, precision: int = 10**4, period_cap: int = 64) -> RotationNumber:
    """Rotation number of a nondecreasing degree-one lift.

    Exact when a periodic orbit of period <= period_cap exists.  Otherwise an
    enclosure of width about 1/precision: with H = G^Q, |H^m(0) - mQ rho| < 1,
    and H^m(0) is bracketed by iterating with outward rounding on a dyadic grid.
    """
    _require_degree_one(G)
    if not G.is_monotone():
        raise ValueError("rotation number needs a nondecreasing lift")
    exact, knots, Q = _power_search(G, period_cap, 20000)
    if exact is not None:
        return RotationNumber(exact, exact)
    xs, ys = zip(*knots)
    H = Lift(xs, ys)
    m = -(-4 * precision // Q)
    D = 1 << 62
    lo = hi = 0  # numerators over D
    for _ in range(m):
        lo = floor(H(Fraction(lo, D)) * D)
        hi = ceil(H(Fraction(hi, D)) * D)
    n = m * Q
    return RotationNumber(Fraction(lo - D, n * D), Fraction(hi + D, n * D))


def rotation_interval(F: Lift, precision: int = 10**4, period_cap: int = 64) -> tuple[RotationNumber, RotationNumber]:
    return (rotation_number(lower_map(F), precision, period_cap),
            rotation_number(upper_map(F), precision, period_cap))


def sup_distance(F: Lift, G: Lift) -> Fraction:
    """Exact sup |F - G| (both degree one, so one fundamental domain suffices)."""
    pts = sorted(set(F.xs) | set(G.xs))
    return max(abs(F(x) - G(x)) for x in pts)
