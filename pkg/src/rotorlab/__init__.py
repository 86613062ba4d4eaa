"""Over-rotation combinatorics of interval maps and truncated bimodal horseshoes."""

from fractions import Fraction

from .combinatorics import (
    CyclicPattern,
    OverRotationPair,
    TrivialCycleError,
    orp_forces,
    over_rotation_number,
    over_rotation_pair,
    sharkovsky_ge,
)
from .overtwist import OvertwistSpec, color_of, modality_of, overtwist_permutation

__all__ = [
    "Fraction",
    "CyclicPattern",
    "OverRotationPair",
    "TrivialCycleError",
    "orp_forces",
    "over_rotation_number",
    "over_rotation_pair",
    "sharkovsky_ge",
    "OvertwistSpec",
    "color_of",
    "modality_of",
    "overtwist_permutation",
]
