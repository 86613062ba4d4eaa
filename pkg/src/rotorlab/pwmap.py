"""Continuous piecewise-affine self-maps of [0, 1] with exact rational data."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        raise TypeError("floats are not accepted; pass an exact fraction")
    return Fraction(v)


@dataclass(frozen=True)
class Lap:
    left: Fraction
    right: Fraction
    direction: int  # +1 increasing, -1 decreasing, 0 flat


class PiecewiseMap:
    """Continuous map given by its values at ordered knots, affine in between.

    ``xs[0] == 0`` and ``xs[-1] == 1``.  Flat pieces are allowed.
    """

    def __init__(self, xs: Sequence, ys: Sequence):
        xs = [frac(x) for x in xs]
        ys = [frac(y) for y in ys]
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("need matching knot and value lists of length >= 2")
        if xs[0] != 0 or xs[-1] != 1:
            raise ValueError("knots must span [0, 1]")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("knots must be strictly increasing")
        if any(not 0 <= y <= 1 for y in ys):
            raise ValueError("map must send [0, 1] into [0, 1]")
        self.xs: tuple[Fraction, ...] = tuple(xs)
        self.ys: tuple[Fraction, ...] = tuple(ys)

    @classmethod
    def from_pieces(cls, breakpoints: Sequence, pieces: Sequence[tuple]) -> "PiecewiseMap":
        """Build from breakpoints and per-interval (slope, intercept); checks continuity."""
        bps = [frac(b) for b in breakpoints]
        if len(pieces) != len(bps) - 1:
            raise ValueError("need one piece per interval")
        ys = []
        for i, (s, c) in enumerate(pieces):
            s, c = frac(s), frac(c)
            left = s * bps[i] + c
            if ys and ys[-1] != left:
                raise ValueError(f"discontinuity at {bps[i]}")
            if not ys:
                ys.append(left)
            ys.append(s * bps[i + 1] + c)
        return cls(bps, ys)

    def __repr__(self):
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PiecewiseMap([{pts}])"

    def __eq__(self, other):
        return isinstance(other, PiecewiseMap) and self.simplified().xs == other.simplified().xs and self.simplified().ys == other.simplified().ys

    def __hash__(self):
        s = self.simplified()
        return hash((s.xs, s.ys))

    def piece_index(self, x: Fraction) -> int:
        i = bisect_right(self.xs, x) - 1
        return min(max(i, 0), len(self.xs) - 2)

    def piece(self, i: int) -> tuple[Fraction, Fraction]:
        """(slope, intercept) on the i-th interval."""
        x0, x1 = self.xs[i], self.xs[i + 1]
        y0, y1 = self.ys[i], self.ys[i + 1]
        s = (y1 - y0) / (x1 - x0)
        return s, y0 - s * x0

    @property
    def pieces(self) -> list[tuple[Fraction, Fraction]]:
        return [self.piece(i) for i in range(len(self.xs) - 1)]

    def __call__(self, x) -> Fraction:
        x = frac(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} outside [0, 1]")
        s, c = self.piece(self.piece_index(x))
        return s * x + c

    def simplified(self) -> "PiecewiseMap":
        """Drop knots where the affine piece does not change."""
        xs, ys = [self.xs[0]], [self.ys[0]]
        for i in range(1, len(self.xs) - 1):
            s0 = (self.ys[i] - ys[-1]) / (self.xs[i] - xs[-1])
            s1 = (self.ys[i + 1] - self.ys[i]) / (self.xs[i + 1] - self.xs[i])
            if s0 != s1:
                xs.append(self.xs[i])
                ys.append(self.ys[i])
        xs.append(self.xs[-1])
        ys.append(self.ys[-1])
        return PiecewiseMap(xs, ys)

    def laps(self) -> list[Lap]:
        """Maximal monotone pieces; flat pieces form their own laps."""
        out: list[Lap] = []
        for i in range(len(self.xs) - 1):
            d = (self.ys[i + 1] > self.ys[i]) - (self.ys[i + 1] < self.ys[i])
            if out and out[-1].direction == d:
                out[-1] = Lap(out[-1].left, self.xs[i + 1], d)
            else:
                out.append(Lap(self.xs[i], self.xs[i + 1], d))
        return out

    def turning_points(self) -> list[Fraction]:
        """Boundaries between consecutive strictly monotone laps."""
        laps = self.laps()
        return [a.right for a, b in zip(laps, laps[1:]) if a.direction * b.direction == -1]

    def modality(self) -> int:
        return len(self.turning_points())

    def fixed_points(self, lo=Fraction(0), hi=Fraction(1)) -> list[Fraction]:
        """Isolated fixed points in [lo, hi]; raises if some piece is the identity."""
        found = set()
        for i in range(len(self.xs) - 1):
            a, b = max(self.xs[i], lo), min(self.xs[i + 1], hi)
            if a > b:
                continue
            s, c = self.piece(i)
            if s == 1:
                if c == 0:
                    raise ValueError("map is the identity on an interval")
                continue
            x = c / (1 - s)
            if a <= x <= b:
                found.add(x)
        return sorted(found)

    def image(self, a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
        """Exact image of [a, b]."""
        vals = [self(a), self(b)]
        vals += [y for x, y in zip(self.xs, self.ys) if a < x < b]
        return min(vals), max(vals)

    def orbit(self, x, n: int) -> list[Fraction]:
        x = frac(x)
        out = [x]
        for _ in range(n - 1):
            x = self(x)
            out.append(x)
        return out


def parse_fraction_list(values: Iterable) -> list[Fraction]:
    return [frac(v) for v in values]


def fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
