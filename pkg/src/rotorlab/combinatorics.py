"""Cyclic patterns, over-rotation pairs and the two orders that govern forcing.

Patterns use 1-based spatial labelling: ``image[j - 1]`` is the spatial index
that the ``j``-th point from the left is mapped to.  All rationals are
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


class TrivialCycleError(ValueError):
    """A fixed point has no over-rotation pair."""


@dataclass(frozen=True)
class CyclicPattern:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        object.__setattr__(self, "image", image)
        q = len(image)
        if q < 1:
            raise ValueError("pattern must have at least one point")
        if sorted(image) != list(range(1, q + 1)):
            raise ValueError(f"image {image} is not a permutation of 1..{q}")
        j, steps = 1, 0
        while True:
            j = image[j - 1]
            steps += 1
            if j == 1:
                break
        if steps != q:
            raise ValueError(f"image {image} is not a single {q}-cycle")

    @property
    def q(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j - 1]

    def reversed(self) -> "CyclicPattern":
        """Conjugate by the orientation flip j -> q + 1 - j."""
        q = self.q
        return CyclicPattern(tuple(q + 1 - self(q + 1 - j) for j in range(1, q + 1)))

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "image": list(self.image)})

    @classmethod
    def from_json(cls, text: str | dict) -> "CyclicPattern":
        obj = json.loads(text) if isinstance(text, str) else text
        pattern = cls(tuple(obj["image"]))
        if "q" in obj and obj["q"] != pattern.q:
            raise ValueError("q does not match image length")
        return pattern

    @classmethod
    def from_orbit(cls, points: Sequence, f) -> "CyclicPattern":
        """Pattern of a periodic orbit ``points`` of the map ``f``."""
        ordered = sorted(points)
        index = {x: i + 1 for i, x in enumerate(ordered)}
        return cls(tuple(index[f(x)] for x in ordered))


@dataclass(frozen=True, order=True)
class OverRotationPair:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0 or 2 * self.p > self.q:
            raise ValueError(f"({self.p},{self.q}) is not an over-rotation pair")

    @property
    def number(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def coprime(self) -> bool:
        return gcd(self.p, self.q) == 1


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def switch_count(pattern: CyclicPattern) -> int:
    """Number of points where the displacement sign changes after one step."""
    f = pattern
    return sum(
        _sign(f(j) - j) != _sign(f(f(j)) - f(j)) for j in range(1, pattern.q + 1)
    )


def over_rotation_pair(pattern: CyclicPattern) -> OverRotationPair:
    if pattern.q == 1:
        raise TrivialCycleError("trivial cycle: a fixed point has no over-rotation pair")
    m = switch_count(pattern)
    assert m % 2 == 0
    return OverRotationPair(m // 2, pattern.q)


def over_rotation_number(pattern: CyclicPattern) -> Fraction:
    return over_rotation_pair(pattern).number


def orbit_over_rotation_number(points: Sequence, f) -> Fraction:
    """Over-rotation number of a concrete periodic orbit of period >= 2."""
    return over_rotation_number(CyclicPattern.from_orbit(points, f))


def _odd_part(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def sharkovsky_ge(m: int, n: int) -> bool:
    """True iff m precedes n in the Sharkovsky order, or m == n."""
    if m < 1 or n < 1:
        raise ValueError("Sharkovsky order is defined on positive integers")
    if m == n:
        return True
    km, om = _odd_part(m)
    kn, on = _odd_part(n)
    if om == 1 and on == 1:
        return km > kn
    if om == 1:
        return False
    if on == 1:
        return True
    if km != kn:
        return km < kn
    return om < on


def orp_forces(a: OverRotationPair, b: OverRotationPair) -> bool:
    """Whether over-rotation pair ``a`` forces ``b`` (reflexive)."""
    ra, rb = a.number, b.number
    if ra != rb:
        return ra < rb
    k, l = ra.numerator, ra.denominator
    return sharkovsky_ge(a.p // k, b.p // k)


def all_cyclic_patterns(q: int):
    """Every cyclic permutation of {1..q}, as patterns."""
    from itertools import permutations

    if q == 1:
        yield CyclicPattern((1,))
        return
    # a q-cycle is fixed by the sequence 1 -> c1 -> c2 ... -> 1
    for order in permutations(range(2, q + 1)):
        image = [0] * q
        cycle = (1,) + order
        for a, b in zip(cycle, cycle[1:] + (1,)):
            image[a - 1] = b
        yield CyclicPattern(tuple(image))
