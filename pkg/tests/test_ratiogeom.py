import math
import random
from fractions import Fraction

import pytest

from unring import OrientedRatio, Ratio, monodromy, oriented_lift, to_angle, to_fraction
from unring.errors import AmbiguousTransport, OpenLoopError, VerticalAxisError
from unring.ratiogeom import PrimitiveDirection, oriented_eq, ratio_eq

HALF_TURN = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1), (1, 0)]
COMPASS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0)]


def test_ratio_equality():
    assert ratio_eq(Ratio(2, 4), Ratio(1, 2))
    assert ratio_eq(Ratio(1, 2), Ratio(-1, -2))
    assert not ratio_eq(Ratio(1, 2), Ratio(2, 1))


def test_oriented_equality():
    assert oriented_eq(OrientedRatio(1, 2), OrientedRatio(2, 4))
    assert not oriented_eq(OrientedRatio(1, 2), OrientedRatio(-1, -2))
    assert oriented_eq(OrientedRatio(1, 0), OrientedRatio(1, 0))


def test_zero_pair_rejected():
    with pytest.raises(ValueError):
        Ratio(0, 0)


def test_hash_respects_equality():
    assert len({Ratio(1, 2), Ratio(-2, -4), Ratio(3, 6)}) == 1
    assert len({OrientedRatio(1, 2), OrientedRatio(-1, -2)}) == 2


def test_primitive_direction():
    assert PrimitiveDirection.of(Fraction(1, 2), Fraction(3, 4)) == PrimitiveDirection(2, 3)
    assert str(Ratio(-2, -4)) == "1:2"


def test_to_fraction():
    assert to_fraction(Ratio(2, 3)) == Fraction(3, 2)
    assert to_fraction(Ratio(1, 0)) == 0
    with pytest.raises(VerticalAxisError):
        to_fraction(Ratio(0, 1))


def test_angles():
    assert to_angle(OrientedRatio(0, 1)) == pytest.approx(math.pi / 2)
    assert to_angle(OrientedRatio(-1, 0)) == pytest.approx(math.pi)
    assert to_angle(Ratio(-1, 0)) == 0.0


def test_half_turn_loop_twists():
    assert monodromy([Ratio(a, b) for a, b in HALF_TURN]) == -1


def test_constant_loop():
    assert monodromy([Ratio(1, 1), Ratio(1, 1)]) == 1


def test_compass_oriented_loop():
    assert monodromy([OrientedRatio(a, b) for a, b in COMPASS]) == 1


def test_double_lift_closes():
    loop = [Ratio(a, b) for a, b in HALF_TURN]
    once = oriented_lift(loop, 1)
    assert once[0] != once[-1]
    twice = oriented_lift(loop, 2)
    assert twice[0] == twice[-1] and monodromy(twice) == 1


def test_perpendicular_step_rejected():
    with pytest.raises(AmbiguousTransport):
        monodromy([Ratio(1, 0), Ratio(0, 1), Ratio(1, 0)])


def test_open_loop_rejected():
    with pytest.raises(OpenLoopError):
        monodromy([Ratio(1, 0), Ratio(1, 1)])


def refine(points, rng):
    """Insert positive combinations between neighbours, rescale by random signs."""
    out = [points[0]]
    for (a, b), (c, d) in zip(points, points[1:]):
        # keep the neighbour pair on the same side before interpolating
        if a * c + b * d < 0:
            c, d = -c, -d
        for _ in range(rng.randint(0, 3)):
            s, t = rng.randint(1, 5), rng.randint(1, 5)
            out.append((s * a + t * c, s * b + t * d))
        out.append((c, d))
    scaled = []
    for a, b in out:
        k = Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 3))
        scaled.append((a * k, b * k))
    return scaled


def test_monodromy_stable_under_refinement():
    rng = random.Random(23)
    for _ in range(100):
        pts = refine(HALF_TURN, rng)
        assert monodromy([Ratio(a, b) for a, b in pts]) == -1
