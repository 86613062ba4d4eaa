"""The bimodal horseshoe H2, its truncations H_{alpha,beta}, itineraries and psi.

``psi`` is evaluated exactly.  For rational parameters every point of the
critical orbits is eventually periodic (each step either keeps the
denominator or strips a factor 3), so the critical orbits together with the
flat-spot ends and fixed points form a finite invariant partition.  The
truncation is Markov on it, and the left end of its over-rotation interval is
the smaller of the minimum cycle mean of the covering graph and the
over-rotation numbers of the finitely many cycles inside the partition set
(the cycles through a flat spot).  Bounded symbolic enumeration of cycles is
kept as an independent route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .combinatorics import CyclicPattern, orbit_over_rotation_number, over_rotation_number
from .overtwist import color_of, identify
from .plinear import graph_from_partition, min_mean_cycle, components
from .pwmap import PiecewiseMap, frac

ZERO, ONE, HALF, THIRD, TWO_THIRDS = (
    Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)
)

SYMBOLS = ("I0", "C1", "I1", "C2", "I2")
# lap index -> symbol index; C_j sits between I_{j-1} and I_j
LAP_SYMBOL = {0: 0, 1: 2, 2: 4}
H2_BRANCHES = {0: (Fraction(3), ZERO), 1: (Fraction(-3), Fraction(2)), 2: (Fraction(3), Fraction(-2))}
H2_LAPS = {0: (ZERO, THIRD), 1: (THIRD, TWO_THIRDS), 2: (TWO_THIRDS, ONE)}
COLOR_LAP = {"red": 0, "green": 1, "pink": 1, "blue": 2}


class ItineraryInfeasible(ValueError):
    pass


class InsufficientLength(ValueError):
    pass


def _check_unit(x: Fraction):
    if not ZERO <= x <= ONE:
        raise ValueError(f"{x} outside [0, 1]")


def h2(x) -> Fraction:
    x = frac(x)
    _check_unit(x)
    if x <= THIRD:
        return 3 * x
    if x <= TWO_THIRDS:
        return 2 - 3 * x
    return 3 * x - 2


H2 = PiecewiseMap([ZERO, THIRD, TWO_THIRDS, ONE], [ZERO, ONE, ZERO, ONE])


@dataclass(frozen=True)
class TruncationParams:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        a, b = frac(self.alpha), frac(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if not (HALF <= a <= ONE and ZERO <= b <= HALF):
            raise ValueError(f"({a}, {b}) lies outside the parameter rectangle")

    @property
    def max_spot(self) -> tuple[Fraction, Fraction]:
        return self.alpha / 3, TWO_THIRDS - self.alpha / 3

    @property
    def min_spot(self) -> tuple[Fraction, Fraction]:
        return TWO_THIRDS - self.beta / 3, TWO_THIRDS + self.beta / 3

    @property
    def degenerate(self) -> bool:
        """All periodic points are fixed here (alpha = beta, alpha = 1/2 or beta = 1/2)."""
        return self.alpha == HALF or self.beta == HALF or self.alpha == self.beta


def trunc_map(params: TruncationParams) -> PiecewiseMap:
    a, b = params.alpha, params.beta
    m0, m1 = params.max_spot
    n0, n1 = params.min_spot
    knots = [(ZERO, ZERO), (m0, a), (m1, a), (n0, b), (n1, b), (ONE, ONE)]
    xs, ys = [], []
    for x, y in knots:
        if xs and xs[-1] == x:
            continue
        xs.append(x)
        ys.append(y)
    return PiecewiseMap(xs, ys)


def h_trunc(params: TruncationParams, x) -> Fraction:
    x = frac(x)
    _check_unit(x)
    m0, m1 = params.max_spot
    n0, n1 = params.min_spot
    if m0 <= x <= m1:
        return params.alpha
    if n0 <= x <= n1:
        return params.beta
    return h2(x)


# ---------------------------------------------------------------- itineraries


@dataclass(frozen=True)
class Itinerary:
    """Symbol indices into SYMBOLS: 0=I0, 1=C1, 2=I1, 3=C2, 4=I2."""

    symbols: tuple[int, ...]

    def __len__(self):
        return len(self.symbols)

    def names(self) -> tuple[str, ...]:
        return tuple(SYMBOLS[s] for s in self.symbols)

    @classmethod
    def of(cls, *names: str) -> "Itinerary":
        return cls(tuple(SYMBOLS.index(n) for n in names))


@dataclass(frozen=True)
class KneadingVector:
    k1: Itinerary
    k2: Itinerary


def location(f: PiecewiseMap, x: Fraction) -> int:
    c = f.turning_points()
    if len(c) != 2:
        raise ValueError("itineraries are defined for bimodal maps")
    c1, c2 = c
    if x < c1:
        return 0
    if x == c1:
        return 1
    if x < c2:
        return 2
    if x == c2:
        return 3
    return 4


def itinerary(f: PiecewiseMap, x, n: int) -> Itinerary:
    x = frac(x)
    out = []
    for _ in range(n):
        out.append(location(f, x))
        x = f(x)
    return Itinerary(tuple(out))


def symbol_signs(f: PiecewiseMap) -> tuple[int, ...]:
    """Theta on the five symbols: lap directions on I_j, 0 on C_j."""
    laps = [l for l in f.laps() if l.direction != 0]
    d = [laps[0].direction, laps[1].direction, laps[2].direction] if len(laps) == 3 else [1, -1, 1]
    return (d[0], 0, d[1], 0, d[2])


def kneading_vector(f: PiecewiseMap, n: int) -> KneadingVector:
    c1, c2 = f.turning_points()
    return KneadingVector(itinerary(f, f(c1), n), itinerary(f, f(c2), n))


def compare_itineraries(a: Itinerary, b: Itinerary, theta: Sequence[int] = (1, 0, -1, 0, 1)) -> str:
    """'stronger', 'weaker', 'equal' or 'undefined' under the signed lexicographic order.

    The orientation before the first discrepancy k is the product of theta
    over the symbols at positions 0..k-1 (the orientation of f^k there).
    """
    if len(a) != len(b):
        raise InsufficientLength("insufficient length: itineraries must be compared on equal lengths")
    sign = 1
    for s, t in zip(a.symbols, b.symbols):
        if s != t:
            if sign == 0:
                return "undefined"
            return "stronger" if (s > t) == (sign > 0) else "weaker"
        sign *= theta[s]
    return "equal"


# ------------------------------------------------------ over-twist orbits in H2


def overtwist_word(pattern: CyclicPattern) -> tuple[int, ...] | None:
    spec = identify(pattern)
    if spec is None:
        return None
    return tuple(COLOR_LAP[color_of(spec, j)] for j in range(1, pattern.q + 1))


def _solve_word(pattern: CyclicPattern, word: Sequence[int]) -> list[Fraction] | None:
    """Points x_1 < ... < x_q with H2 branch word[j] sending x_j to x_{image[j]}."""
    q = pattern.q
    A, B = ONE, ZERO
    j = 1
    for _ in range(q):
        s, c = H2_BRANCHES[word[j - 1]]
        A, B = s * A, s * B + c
        j = pattern(j)
    if A == 1:
        return None
    xs = {1: B / (1 - A)}
    j = 1
    for _ in range(q - 1):
        s, c = H2_BRANCHES[word[j - 1]]
        xs[pattern(j)] = s * xs[j] + c
        j = pattern(j)
    pts = [xs[k] for k in range(1, q + 1)]
    if any(a >= b for a, b in zip(pts, pts[1:])):
        return None
    for x, w in zip(pts, word):
        lo, hi = H2_LAPS[w]
        if not lo <= x <= hi:
            return None
    if any(h2(pts[k - 1]) != pts[pattern(k) - 1] for k in range(1, q + 1)):
        return None
    return pts


def realize_cycle_in_h2(pattern: CyclicPattern, word: Sequence[int] | None = None) -> list[Fraction]:
    """Exact points of an H2 cycle exhibiting ``pattern``, left to right.

    ``word`` gives the lap (0, 1, 2) of each point in spatial order.  By default
    members of the over-twist family use their colour laps (red I0, green and
    pink I1, blue I2); other patterns take the first feasible nondecreasing word.
    """
    if word is None:
        word = overtwist_word(pattern)
    if word is not None:
        pts = _solve_word(pattern, tuple(word))
        if pts is None:
            raise ItineraryInfeasible(f"itinerary infeasible: word {tuple(word)}")
        return pts
    for w in combinations_with_replacement((0, 1, 2), pattern.q):
        pts = _solve_word(pattern, w)
        if pts is not None:
            return pts
    raise ItineraryInfeasible("itinerary infeasible: no lap word realises the pattern")


def extrema_images(pattern: CyclicPattern) -> tuple[Fraction, Fraction]:
    """(H2(M), H2(m)): the largest and smallest points of the realised orbit."""
    pts = realize_cycle_in_h2(pattern)
    return pts[-1], pts[0]


# ------------------------------------------------------------ cycles and psi


@dataclass(frozen=True)
class Cycle:
    points: tuple[Fraction, ...]  # sorted

    @property
    def period(self) -> int:
        return len(self.points)


def _orbit_cycle(f, x: Fraction) -> tuple[Fraction, ...]:
    pts = [x]
    y = f(x)
    while y != x:
        pts.append(y)
        y = f(y)
    return tuple(sorted(pts))


def _branches(params: TruncationParams):
    m0, _ = params.max_spot
    n0, n1 = params.min_spot
    _, m1 = params.max_spot
    return [
        (ZERO, m0, Fraction(3), ZERO),
        (m1, n0, Fraction(-3), Fraction(2)),
        (n1, ONE, Fraction(3), Fraction(-2)),
    ]


def enumerate_cycles_trunc(params: TruncationParams, period_cap: int) -> list[Cycle]:
    """All cycles of period <= period_cap, found symbolically.

    Words over the three monotone branches are grown with exact image
    intervals and dropped once the image misses the next branch; closed words
    are solved as affine fixed points.  Cycles through a flat spot are the
    orbits of alpha or beta returning to themselves.
    """
    f = trunc_map(params)
    branches = _branches(params)
    found: set[tuple[Fraction, ...]] = set()

    def close(word, A, B):
        x = B / (1 - A)
        y = x
        for s in word:
            lo, hi, a, c = branches[s]
            if not lo <= y <= hi:
                return
            y = a * y + c
        if y == x:
            found.add(_orbit_cycle(f, x))

    # stack items: word, image interval of the cylinder after len(word) steps, affine
    stack = []
    for s, (lo, hi, a, c) in enumerate(branches):
        if lo <= hi:
            stack.append(((s,), lo, hi, a, c))
    while stack:
        word, lo, hi, A, B = stack.pop()
        _, _, a, c = branches[word[-1]]
        ylo, yhi = sorted((a * lo + c, a * hi + c))
        s0 = word[0]
        b0lo, b0hi = branches[s0][0], branches[s0][1]
        if max(ylo, b0lo) <= min(yhi, b0hi) and all(word <= word[i:] + word[:i] for i in range(1, len(word))):
            close(word, A, B)
        if len(word) == period_cap:
            continue
        for s, (blo, bhi, a2, c2) in enumerate(branches):
            if s < s0 or blo > bhi:
                continue
            nlo, nhi = max(ylo, blo), min(yhi, bhi)
            if nlo <= nhi:
                stack.append((word + (s,), nlo, nhi, a2 * A, a2 * B + c2))

    for v in (params.alpha, params.beta):
        x = v
        for _ in range(period_cap):
            x = f(x)
            if x == v:
                found.add(_orbit_cycle(f, v))
                break
    return [Cycle(pts) for pts in sorted(found, key=lambda p: (len(p), p))]


def cycle_over_rotation(params: TruncationParams, cycle: Cycle) -> Fraction:
    f = trunc_map(params)
    return orbit_over_rotation_number(cycle.points, f)


def psi_enumerated(params: TruncationParams, period_cap: int) -> Fraction:
    """Minimum over-rotation number over cycles of period <= period_cap (1/2 if none)."""
    f = trunc_map(params)
    best = HALF
    for cyc in enumerate_cycles_trunc(params, period_cap):
        if cyc.period >= 2:
            best = min(best, orbit_over_rotation_number(cyc.points, f))
    return best


@dataclass(frozen=True)
class PsiResult:
    value: Fraction
    converged: bool
    method: str  # "convention", "markov" or "enumeration"


def critical_partition(params: TruncationParams, limit: int = 6000) -> list[Fraction] | None:
    """Finite invariant partition: knots, fixed points and the orbits of alpha and beta."""
    f = trunc_map(params)
    pts = set(f.xs)
    for x in f.fixed_points():
        pts.add(x)
    for v in (params.alpha, params.beta):
        x = v
        while x not in pts or x == v:
            pts.add(x)
            x = f(x)
            if len(pts) > limit:
                return None
            if x == v:
                break
    return sorted(pts)


def psi_markov(params: TruncationParams, limit: int = 6000) -> Fraction | None:
    """Exact left end of the over-rotation interval, or None when the partition is too large."""
    f = trunc_map(params)
    pts = critical_partition(params, limit)
    if pts is None:
        return None
    best = None
    graph = graph_from_partition(f, pts)
    if components(graph):
        best = min_mean_cycle(graph)
    image = {x: f(x) for x in pts}
    seen = set()
    for x in pts:
        if x in seen:
            continue
        # walk until a repeat; the repeated point lies on a cycle inside pts
        path, y = [], x
        while y not in seen and y not in path:
            path.append(y)
            y = image[y]
        seen.update(path)
        if y in path:
            cyc = path[path.index(y):]
            if len(cyc) >= 2:
                rho = orbit_over_rotation_number(cyc, f)
                best = rho if best is None else min(best, rho)
    return HALF if best is None else best


def psi(params: TruncationParams, period_cap: int = 16, limit: int = 6000) -> PsiResult:
    """psi(alpha, beta): left end of the over-rotation interval of H_{alpha,beta}."""
    if params.degenerate:
        return PsiResult(HALF, True, "convention")
    exact = psi_markov(params, limit)
    if exact is not None:
        return PsiResult(exact, True, "markov")
    lo = psi_enumerated(params, period_cap)
    hi = psi_enumerated(params, 2 * period_cap)
    return PsiResult(hi, lo == hi, "enumeration")
