from fractions import Fraction

import pytest

from fracchern.errors import ExpressionError
from fracchern.gcring import RingPresentation

from conftest import random_polynomial


@pytest.fixture
def ring():
    return RingPresentation([("a", 2), ("x1", 2), ("x2", 2)], 10)


def test_literals(ring):
    assert ring.poly("3/2") == ring.constant(Fraction(3, 2))
    assert ring.poly("0") == ring.zero()
    assert ring.poly("-7") == ring.constant(-7)


def test_operators(ring):
    a, x1 = ring.gen("a"), ring.gen("x1")
    assert ring.poly("a*x1 - 2*x1^2") == a * x1 - x1 * x1 * 2
    assert ring.poly("(a + x1)^2") == (a + x1) ** 2
    assert ring.poly("-a^2 + 1") == -(a * a) + 1
    assert ring.poly("2 - -3") == ring.constant(5)


def test_roundtrip_random(ring, rng):
    for _ in range(40):
        p = random_polynomial(ring, rng)
        assert ring.poly(p.render()) == p


def test_roundtrip_with_odd_generators(rng):
    ring = RingPresentation([("zb1", 1), ("cb1", 2), ("z2", 3), ("c2", 4)], 9)
    for _ in range(40):
        p = random_polynomial(ring, rng)
        assert ring.poly(p.render()) == p


@pytest.mark.parametrize(
    "bad",
    ["c9", "a +", "(a", "a ** 2", "1/0", "3/", "a^x1", "$a", ""],
)
def test_errors(ring, bad):
    with pytest.raises(ExpressionError):
        ring.poly(bad)
