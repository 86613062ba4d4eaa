from math import gcd

import pytest
from hypothesis import given, strategies as st

from rotorlab.combinatorics import CyclicPattern, OverRotationPair, over_rotation_pair
from rotorlab.overtwist import (
    COLORS, InvalidOvertwistSpec, OvertwistSpec, color_of, family, identify, modality_of,
    overtwist_permutation,
)
from rotorlab.plinear import is_overtwist


def specs(qmax):
    for q in range(3, qmax + 1):
        for p in range(1, (q + 1) // 2):
            if gcd(p, q) == 1 and 2 * p < q:
                yield from family(p, q)


@pytest.mark.parametrize("spec,image", [
    ((3, 11, 3), (4, 5, 6, 11, 10, 9, 3, 2, 1, 7, 8)),
    ((1, 3, 0), (3, 1, 2)),
    ((1, 3, 1), (2, 3, 1)),
])
def test_examples(spec, image):
    assert overtwist_permutation(OvertwistSpec(*spec)).image == image


@pytest.mark.parametrize("j,color", [(1, "red"), (3, "red"), (4, "green"), (7, "pink"), (10, "blue")])
def test_colors_3_11_3(j, color):
    assert color_of(OvertwistSpec(3, 11, 3), j) == color


def test_color_no_red_when_r_zero():
    assert color_of(OvertwistSpec(1, 3, 0), 1) == "green"


def test_color_out_of_range():
    with pytest.raises(IndexError):
        color_of(OvertwistSpec(1, 3, 0), 4)


@pytest.mark.parametrize("spec,kind", [((1, 3, 0), "unimodal"), ((3, 11, 3), "bimodal"), ((1, 3, 1), "unimodal")])
def test_modality(spec, kind):
    assert modality_of(OvertwistSpec(*spec)) == kind


@pytest.mark.parametrize("bad", [(2, 6, 1), (1, 2, 0), (1, 5, 4), (1, 5, -1), (3, 5, 0)])
def test_invalid_specs(bad):
    with pytest.raises(InvalidOvertwistSpec):
        OvertwistSpec(*bad)


def test_family_size():
    for p, q in [(1, 3), (3, 11), (2, 7), (5, 12)]:
        assert len(family(p, q)) == q - 2 * p + 1


def test_structure_up_to_30():
    for spec in specs(30):
        p, q, r = spec.p, spec.q, spec.r
        pat = overtwist_permutation(spec)
        assert over_rotation_pair(pat) == OverRotationPair(p, q)
        img = pat.image
        blocks = spec.blocks()
        assert set(blocks) == set(COLORS)
        for j in blocks["red"]:
            assert img[j - 1] == j + p
        for j in blocks["blue"]:
            assert img[j - 1] == j - p
        green = [img[j - 1] for j in blocks["green"]]
        pink = [img[j - 1] for j in blocks["pink"]]
        assert green == list(range(q, q - p, -1))
        assert pink == list(range(p, 0, -1))


def test_every_member_is_an_overtwist():
    for spec in specs(13):
        assert is_overtwist(overtwist_permutation(spec))


def test_reversal_symmetry():
    for spec in specs(20):
        mirrored = overtwist_permutation(spec).reversed()
        other = OvertwistSpec(spec.p, spec.q, spec.q - 2 * spec.p - spec.r)
        assert mirrored == overtwist_permutation(other)


def test_identify_round_trip():
    for spec in specs(15):
        assert identify(overtwist_permutation(spec)) == spec
    assert identify(CyclicPattern((2, 1))) is None


@given(st.integers(3, 40).flatmap(lambda q: st.tuples(st.just(q), st.integers(1, (q - 1) // 2))))
def test_colors_tile(qp):
    q, p = qp
    if gcd(p, q) != 1:
        return
    for spec in family(p, q):
        counts = {c: 0 for c in COLORS}
        for j in range(1, q + 1):
            counts[color_of(spec, j)] += 1
        assert counts == {"red": spec.r, "green": p, "pink": p, "blue": q - 2 * p - spec.r}
