"""Parameter-space geometry: leading-set staircases, classification, retraction, sweeps."""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .horseshoe import (
    HALF, ONE, ZERO, TruncationParams, extrema_images, psi, trunc_map,
)
from .overtwist import OvertwistSpec, family, overtwist_permutation
from .pwmap import fmt, frac

Point = tuple[Fraction, Fraction]
FOCAL: Point = (ONE, ZERO)
VERTEX: Point = (HALF, HALF)


class PointBelowTract(ValueError):
    pass


class EmptyLevelSet(ValueError):
    pass


@dataclass(frozen=True)
class ParamPoint:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = frac(self.alpha), frac(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if not (HALF <= a <= ONE and ZERO <= b <= HALF):
            raise ValueError(f"({a}, {b}) lies outside the parameter rectangle")

    @property
    def xy(self) -> Point:
        return self.alpha, self.beta

    def params(self) -> TruncationParams:
        return TruncationParams(self.alpha, self.beta)

    @property
    def on_base(self) -> bool:
        return self.alpha == HALF or self.beta == HALF


@dataclass(frozen=True)
class Staircase:
    """Alternating tread/rise polyline from the side arm alpha = 1 down to beta = 0."""

    corners: tuple[Point, ...]

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.corners, self.corners[1:]))

    @property
    def treads(self) -> list[Fraction]:
        return [a[0] - b[0] for a, b in self.segments() if a[1] == b[1]]

    @property
    def rises(self) -> list[Fraction]:
        return [a[1] - b[1] for a, b in self.segments() if a[0] == b[0]]

    @property
    def steps(self) -> int:
        return len(self.segments())

    def is_symmetric(self) -> bool:
        return self.treads == self.rises[::-1]

    def is_valid(self) -> bool:
        segs = self.segments()
        for k, (a, b) in enumerate(segs):
            horizontal = k % 2 == 0
            if horizontal and not (a[1] == b[1] and b[0] < a[0]):
                return False
            if not horizontal and not (a[0] == b[0] and b[1] < a[1]):
                return False
        return True

    def to_json(self) -> str:
        return json.dumps([[fmt(a), fmt(b)] for a, b in self.corners])

    @classmethod
    def from_json(cls, text: str) -> "Staircase":
        return cls(tuple((Fraction(a), Fraction(b)) for a, b in json.loads(text)))

    def level(self, alpha: Fraction) -> Fraction | None:
        """Tread height over ``alpha`` (treads are half-open on the left), None left of the last rise."""
        for a, b in self.segments():
            if a[1] == b[1] and b[0] < alpha <= a[0]:
                return a[1]
        return None

    def contains(self, pt: Point) -> bool:
        x, y = pt
        for a, b in self.segments():
            if min(a[0], b[0]) <= x <= max(a[0], b[0]) and min(a[1], b[1]) <= y <= max(a[1], b[1]):
                return True
        return False


def _check_pq(p: int, q: int):
    if p <= 0 or gcd(p, q) != 1 or not 2 * p < q:
        raise ValueError(f"invalid p/q = {p}/{q}: need coprime 0 < p/q < 1/2")


def extrema_table(p: int, q: int) -> list[tuple[Fraction, Fraction]]:
    """(alpha_r, beta_r) = extrema images of Gamma_{r,p/q}, r = 0..q-2p."""
    _check_pq(p, q)
    return [extrema_images(overtwist_permutation(s)) for s in family(p, q)]


def leading_set(p: int, q: int) -> Staircase:
    ext = extrema_table(p, q)
    corners: list[Point] = [(ONE, ext[0][1])]
    for r, (a, b) in enumerate(ext):
        corners.append((a, b))
        nxt = ext[r + 1][1] if r + 1 < len(ext) else ZERO
        corners.append((a, nxt))
    return Staircase(tuple(corners))


def replay_sweep(p: int, q: int) -> list[Point]:
    """Corners visited by lowering beta, then alpha, onto each over-twist orbit in turn.

    At each corner the plateau values are checked to lie on the orbit the
    sweep claims: the flat-spot values run through P_r (max) and P_r or P_{r+1} (min).
    """
    ext = extrema_table(p, q)
    orbits = [
        set(_realized(s)) for s in family(p, q)
    ]
    visited: list[Point] = []
    alpha = ONE
    for r, (a_r, b_r) in enumerate(ext):
        beta = b_r
        if alpha != ONE and beta not in orbits[r]:
            raise AssertionError("sweep lost the min plateau orbit")
        visited.append((alpha, beta))
        alpha = a_r
        f = trunc_map(TruncationParams(alpha, beta))
        if not {alpha, beta} <= orbits[r] or f(alpha) not in orbits[r]:
            raise AssertionError("plateaus are not on the same over-twist orbit")
        visited.append((alpha, beta))
    visited.append((alpha, ZERO))
    return visited


def _realized(spec: OvertwistSpec):
    from .horseshoe import realize_cycle_in_h2

    return realize_cycle_in_h2(overtwist_permutation(spec))


# ------------------------------------------------------------ distances


def _seg_dist2(pt: Point, a: Point, b: Point) -> Fraction:
    x = min(max(pt[0], min(a[0], b[0])), max(a[0], b[0]))
    y = min(max(pt[1], min(a[1], b[1])), max(a[1], b[1]))
    return (x - pt[0]) ** 2 + (y - pt[1]) ** 2


def distance2(pt: Point, stair: Staircase) -> Fraction:
    """Exact squared Euclidean distance from ``pt`` to the staircase."""
    return min(_seg_dist2(pt, a, b) for a, b in stair.segments())


def segments_intersect(s1, s2) -> bool:
    (a, b), (c, d) = s1, s2
    return (
        max(min(a[0], b[0]), min(c[0], d[0])) <= min(max(a[0], b[0]), max(c[0], d[0]))
        and max(min(a[1], b[1]), min(c[1], d[1])) <= min(max(a[1], b[1]), max(c[1], d[1]))
    )


def staircases_disjoint(s1: Staircase, s2: Staircase) -> bool:
    return not any(segments_intersect(u, v) for u in s1.segments() for v in s2.segments())


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class Classification:
    label: str  # "on_Z", "in_G" or "in_U"
    psi: Fraction | None = None
    agrees: bool | None = None
    flagged: bool = False


def geometric_side(stair: Staircase, pt: Point) -> str:
    if stair.contains(pt):
        return "on_Z"
    h = stair.level(pt[0])
    return "in_U" if h is not None and pt[1] < h else "in_G"


def classify_point(p: int, q: int, pt: ParamPoint, cap: int | None = None,
                   stair: Staircase | None = None) -> Classification:
    """Side of Z_{p/q}; with ``cap`` the answer is cross-checked against psi."""
    stair = stair or leading_set(p, q)
    label = geometric_side(stair, pt.xy)
    if cap is None:
        return Classification(label)
    res = psi(pt.params(), cap)
    target = Fraction(p, q)
    expected = {"on_Z": res.value == target, "in_G": res.value >= target, "in_U": res.value < target}
    return Classification(label, res.value, expected[label], not res.converged)


def ray_point(pt: ParamPoint, t: Fraction) -> ParamPoint:
    """Phi(t) = (x(1-t)+t, y(1-t)), the segment from ``pt`` (t=0) to the focal point (t=1)."""
    return ParamPoint(pt.alpha * (1 - t) + t, pt.beta * (1 - t))


def ray_crossing(stair: Staircase, pt: ParamPoint) -> Fraction | None:
    """Smallest t with Phi(t) on the staircase, computed exactly segment by segment."""
    x, y = pt.xy
    best = None
    for a, b in stair.segments():
        ts = []
        if a[1] == b[1]:  # tread: y(1-t) = c
            if y != 0:
                ts.append(1 - a[1] / y)
            elif a[1] == 0:
                ts.append(ZERO)
        else:  # rise: x(1-t)+t = c
            if x != 1:
                ts.append((a[0] - x) / (1 - x))
            elif a[0] == 1:
                ts.append(ZERO)
        for t in ts:
            if 0 <= t <= 1 and stair.contains(ray_point(pt, t).xy):
                best = t if best is None or t < best else best
    return best


def retract(p: int, q: int, pt: ParamPoint, tol: Fraction = Fraction(1, 10**6)) -> ParamPoint:
    """Slide ``pt`` toward the focal point until it reaches Z_{p/q}, to within ``tol``.

    Bisection on the parameter of the ray, using the side test; the ray meets
    the region beyond the staircase in an initial segment.
    """
    stair = leading_set(p, q)
    side = geometric_side(stair, pt.xy)
    if side == "in_U":
        raise PointBelowTract(f"point below tract: {pt} lies on the focal side of Z_{p}/{q}")
    if side == "on_Z":
        return pt
    lo, hi = ZERO, ONE  # side(lo) = in_G, side(hi) in {on_Z, in_U}
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = geometric_side(stair, ray_point(pt, mid).xy)
        if s == "on_Z":
            return ray_point(pt, mid)
        if s == "in_G":
            lo = mid
        else:
            hi = mid
    return ray_point(pt, hi)


@dataclass(frozen=True)
class KappaWitness:
    kappa1: Fraction
    kappa2: Fraction
    direction: str  # "none", "left", "up" or "down"


def kappa_witness(p: int, q: int, pt: ParamPoint, check_psi: bool = True) -> KappaWitness:
    """Shortest axis-parallel move of ``pt`` onto Z_{p/q}.

    kappa1 >= 0 decreases alpha; kappa2 >= 0 moves beta in the reported direction.
    """
    stair = leading_set(p, q)
    if stair.contains(pt.xy):
        return KappaWitness(ZERO, ZERO, "none")
    if check_psi:
        val = psi(pt.params()).value
        if val != Fraction(p, q):
            raise ValueError(f"psi at {pt.xy} is {val}, not {p}/{q}")
    x, y = pt.xy
    options = []
    for a, b in stair.segments():
        if a[1] == b[1] and b[0] <= x <= a[0]:
            options.append((abs(y - a[1]), "up" if a[1] > y else "down"))
        if a[0] == b[0] and a[0] <= x and b[1] <= y <= a[1]:
            options.append((x - a[0], "left"))
    if not options:
        raise ValueError(f"no axis-parallel move reaches Z_{p}/{q} from {pt.xy}")
    d, direction = min(options, key=lambda o: (o[0], o[1]))
    return KappaWitness(d, ZERO, direction) if direction == "left" else KappaWitness(ZERO, d, direction)


# ------------------------------------------------------------ sweeps


@dataclass(frozen=True)
class SweepRow:
    alpha: Fraction
    beta: Fraction
    psi: Fraction
    converged: bool


def grid_points(m: int, n: int) -> list[tuple[int, int, ParamPoint]]:
    """Row-major grid: row i runs over beta from 0 to 1/2, column j over alpha from 1 down to 1/2."""
    if m < 2 or n < 2:
        raise ValueError("grid dimensions must be >= 2")
    pts = []
    for i in range(m):
        beta = Fraction(i, 2 * (m - 1))
        for j in range(n):
            alpha = ONE - Fraction(j, 2 * (n - 1))
            pts.append((i, j, ParamPoint(alpha, beta)))
    return pts


def _eval(args) -> SweepRow:
    alpha, beta, cap = args
    res = psi(TruncationParams(alpha, beta), cap)
    return SweepRow(alpha, beta, res.value, res.converged)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ROTORLAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class SweepTable:
    m: int
    n: int
    rows: list[SweepRow]

    def at(self, i: int, j: int) -> SweepRow:
        return self.rows[i * self.n + j]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["alpha_num", "alpha_den", "beta_num", "beta_den", "psi_num", "psi_den", "converged"])
        for r in self.rows:
            w.writerow([r.alpha.numerator, r.alpha.denominator, r.beta.numerator,
                        r.beta.denominator, r.psi.numerator, r.psi.denominator, int(r.converged)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, m: int, n: int) -> "SweepTable":
        rows = []
        for rec in csv.DictReader(io.StringIO(text)):
            rows.append(SweepRow(
                Fraction(int(rec["alpha_num"]), int(rec["alpha_den"])),
                Fraction(int(rec["beta_num"]), int(rec["beta_den"])),
                Fraction(int(rec["psi_num"]), int(rec["psi_den"])),
                rec["converged"] == "1",
            ))
        return cls(m, n, rows)


def sweep(m: int, n: int, cap: int = 16, workers: int | None = None) -> SweepTable:
    jobs = [(pt.alpha, pt.beta, cap) for _, _, pt in grid_points(m, n)]
    workers = workers or _threads()
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_eval, jobs, chunksize=64))
    else:
        rows = [_eval(j) for j in jobs]
    return SweepTable(m, n, rows)


def level_cells(table: SweepTable, value: Fraction, tol: Fraction) -> set[tuple[int, int]]:
    return {
        (i, j) for i in range(table.m) for j in range(table.n)
        if abs(table.at(i, j).psi - value) <= tol
    }


def count_components(cells: set[tuple[int, int]]) -> int:
    """Number of 8-connected components."""
    remaining = set(cells)
    count = 0
    while remaining:
        count += 1
        stack = [remaining.pop()]
        while stack:
            i, j = stack.pop()
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    nb = (i + di, j + dj)
                    if nb in remaining:
                        remaining.remove(nb)
                        stack.append(nb)
    return count


def level_set_connected(table: SweepTable, value, tol) -> bool:
    cells = level_cells(table, frac(value), frac(tol))
    if not cells:
        raise EmptyLevelSet(f"empty level set for value {value}")
    return count_components(cells) == 1


def continuity_modulus(table: SweepTable) -> Fraction:
    """Largest psi jump between 8-adjacent converged cells."""
    worst = ZERO
    for i in range(table.m):
        for j in range(table.n):
            a = table.at(i, j)
            if not a.converged:
                continue
            for di, dj in ((0, 1), (1, 0), (1, 1), (1, -1)):
                ii, jj = i + di, j + dj
                if 0 <= ii < table.m and 0 <= jj < table.n:
                    b = table.at(ii, jj)
                    if b.converged:
                        worst = max(worst, abs(a.psi - b.psi))
    return worst


def staircase_svg(stairs: Sequence[tuple[str, Staircase]], size: int = 400) -> str:
    """Static SVG of the parameter rectangle with staircases, base set and side arm."""
    def X(a):
        return float((ONE - a) * 2 * size) + 20

    def Y(b):
        return float((HALF - b) * 2 * size) + 20

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 40}" height="{size + 40}">',
        f'<rect x="20" y="20" width="{size}" height="{size}" fill="none" stroke="#999"/>',
        f'<polyline points="{X(ONE)},{Y(HALF)} {X(HALF)},{Y(HALF)} {X(HALF)},{Y(ZERO)}" '
        'fill="none" stroke="#3a7" stroke-width="3"><title>base set</title></polyline>',
        f'<polyline points="{X(HALF)},{Y(ZERO)} {X(ONE)},{Y(ZERO)} {X(ONE)},{Y(HALF)}" '
        'fill="none" stroke="#c93" stroke-width="3" stroke-dasharray="4"><title>side arm</title></polyline>',
        f'<circle cx="{X(ONE)}" cy="{Y(ZERO)}" r="4"><title>focal point</title></circle>',
    ]
    for name, st in stairs:
        pts = " ".join(f"{X(a):.4f},{Y(b):.4f}" for a, b in st.corners)
        lines.append(f'<polyline points="{pts}" fill="none" stroke="#24c"><title>{name}</title></polyline>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
