"""The bimodal over-twist family Gamma_{r, p/q} and its colour classes."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .combinatorics import CyclicPattern, over_rotation_pair

COLORS = ("red", "green", "pink", "blue")


class InvalidOvertwistSpec(ValueError):
    pass


@dataclass(frozen=True)
class OvertwistSpec:
    p: int
    q: int
    r: int

    def __post_init__(self):
        p, q, r = self.p, self.q, self.r
        if p <= 0 or q <= 0 or gcd(p, q) != 1 or not 2 * p < q:
            raise InvalidOvertwistSpec(
                f"invalid over-twist parameters: need coprime 0 < p/q < 1/2, got {p}/{q}"
            )
        if not 0 <= r <= q - 2 * p:
            raise InvalidOvertwistSpec(
                f"invalid over-twist parameters: r={r} outside 0..{q - 2 * p}"
            )

    def blocks(self) -> dict[str, range]:
        p, q, r = self.p, self.q, self.r
        return {
            "red": range(1, r + 1),
            "green": range(r + 1, r + p + 1),
            "pink": range(r + p + 1, r + 2 * p + 1),
            "blue": range(r + 2 * p + 1, q + 1),
        }


def family(p: int, q: int) -> list[OvertwistSpec]:
    """All q - 2p + 1 members of the family for a coprime p/q."""
    return [OvertwistSpec(p, q, r) for r in range(q - 2 * p + 1)]


def overtwist_permutation(spec: OvertwistSpec) -> CyclicPattern:
    p, q, r = spec.p, spec.q, spec.r
    blocks = spec.blocks()
    covered = [j for b in blocks.values() for j in b]
    if covered != list(range(1, q + 1)):
        raise InvalidOvertwistSpec("branch ranges do not tile 1..q")
    image = []
    for j in range(1, q + 1):
        if j <= r:
            image.append(j + p)
        elif j <= r + p:
            image.append(q - j + r + 1)
        elif j <= r + 2 * p:
            image.append(2 * p - j + r + 1)
        else:
            image.append(j - p)
    pattern = CyclicPattern(tuple(image))
    orp = over_rotation_pair(pattern)
    assert (orp.p, orp.q) == (p, q)
    return pattern


def color_of(spec: OvertwistSpec, j: int) -> str:
    if not 1 <= j <= spec.q:
        raise IndexError(f"spatial index {j} outside 1..{spec.q}")
    for color, block in spec.blocks().items():
        if j in block:
            return color
    raise AssertionError("unreachable")


def modality_of(spec: OvertwistSpec) -> str:
    return "unimodal" if spec.r in (0, spec.q - 2 * spec.p) else "bimodal"


def identify(pattern: CyclicPattern) -> OvertwistSpec | None:
    """The parameters whose permutation equals ``pattern``, if it belongs to the family."""
    if pattern.q < 3:
        return None
    pair = over_rotation_pair(pattern)
    if not pair.coprime or 2 * pair.p == pair.q:
        return None
    for r in range(pair.q - 2 * pair.p + 1):
        spec = OvertwistSpec(pair.p, pair.q, r)
        if overtwist_permutation(spec) == pattern:
            return spec
    return None
