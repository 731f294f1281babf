import random
from fractions import Fraction

import pytest

from fracchern import _kernel, _poly_py
from fracchern.errors import PreconditionError, PresentationMismatch
from fracchern.gcring import Generator, RingMorphism, RingPresentation, transplant

from conftest import random_polynomial


@pytest.fixture
def even_ring():
    return RingPresentation([("a", 2), ("c1", 2), ("c2", 4)], 12)


@pytest.fixture
def loop_ring():
    return RingPresentation([("z1", 1), ("c1", 2), ("z2", 3), ("c2", 4)], 12)


def test_add_examples(even_ring):
    c1 = even_ring.gen("c1")
    assert c1 + c1 == c1 * 2
    p = even_ring.poly("c2 - 3*a*c1")
    assert p + even_ring.zero() == p
    a, c2 = even_ring.gen("a"), even_ring.gen("c2")
    assert (c2 - a * c1) + (a * c1) == c2


def test_odd_square_vanishes(loop_ring):
    z1 = loop_ring.gen("z1")
    assert (z1 * z1).is_zero
    z2 = loop_ring.gen("z2")
    assert (z2 * z2).is_zero


def test_even_odd_commute(loop_ring):
    z1, c1 = loop_ring.gen("z1"), loop_ring.gen("c1")
    assert z1 * c1 == c1 * z1
    assert (z1 * c1).render() == "z1*c1"


def test_koszul_sign(loop_ring):
    z1, z2 = loop_ring.gen("z1"), loop_ring.gen("z2")
    assert z1 * z2 == loop_ring.poly("z1*z2")
    assert z2 * z1 == -(z1 * z2)


def test_graded_commutativity_random(loop_ring, rng):
    for _ in range(40):
        d1 = rng.choice([1, 2, 3, 4])
        d2 = rng.choice([1, 2, 3, 4])
        p = random_polynomial(loop_ring, rng).homogeneous_part(d1)
        q = random_polynomial(loop_ring, rng).homogeneous_part(d2)
        sign = -1 if (d1 % 2 and d2 % 2) else 1
        assert p * q == (q * p) * sign


def test_associativity_distributivity(loop_ring, rng):
    for _ in range(25):
        p = random_polynomial(loop_ring, rng)
        q = random_polynomial(loop_ring, rng)
        r = random_polynomial(loop_ring, rng)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_normal_form_insertion_order(even_ring, rng):
    terms = [
        (even_ring.gen("a") ** 2, Fraction(3, 2)),
        (even_ring.gen("c2"), Fraction(1)),
        (even_ring.gen("a") * even_ring.gen("c1"), Fraction(-3, 2)),
    ]
    total_forward = even_ring.zero()
    for mono, coef in terms:
        total_forward = total_forward + mono * coef
    total_backward = even_ring.zero()
    for mono, coef in reversed(terms):
        total_backward = total_backward + mono * coef
    assert total_forward == total_backward
    assert total_forward.render() == "c2 - 3/2*a*c1 + 3/2*a^2"


def test_truncation_is_ring_quotient(rng):
    big = RingPresentation([("z1", 1), ("c1", 2), ("z2", 3), ("c2", 4)], 9)
    small = RingPresentation([("z1", 1), ("c1", 2), ("z2", 3), ("c2", 4)], 5)
    for _ in range(25):
        p = random_polynomial(big, rng)
        q = random_polynomial(big, rng)
        p_small = transplant(_truncate(p, 5), small)
        q_small = transplant(_truncate(q, 5), small)
        assert transplant(_truncate(p * q, 5), small) == p_small * q_small


def _truncate(p, cap):
    out = p.ring.zero()
    for d in range(cap + 1):
        out = out + p.homogeneous_part(d)
    return out


def test_apply_morphism_expands_square(even_ring):
    shift = RingMorphism.substitution(even_ring, {"c1": "c1 - 2*a"})
    assert shift(even_ring.poly("c1^2")) == even_ring.poly("c1^2 - 4*a*c1 + 4*a^2")


def test_identity_morphism(even_ring, rng):
    ident = RingMorphism.identity(even_ring)
    for _ in range(10):
        p = random_polynomial(even_ring, rng)
        assert ident(p) == p


def test_morphism_is_ring_map(loop_ring, rng):
    target = loop_ring
    images = {
        "z1": target.poly("3*z1"),
        "c1": target.poly("2*c1"),
        "z2": target.poly("z2 + z1*c1"),
        "c2": target.poly("c2 - c1^2"),
    }
    m = RingMorphism(loop_ring, target, images)
    for _ in range(20):
        p = random_polynomial(loop_ring, rng)
        q = random_polynomial(loop_ring, rng)
        assert m(p * q) == m(p) * m(q)
        assert m(p + q) == m(p) + m(q)


def test_morphism_validation(even_ring, loop_ring):
    with pytest.raises(PreconditionError):
        RingMorphism(even_ring, even_ring, {"a": "c2", "c1": "c1", "c2": "c2"})
    with pytest.raises(PreconditionError):
        RingMorphism(even_ring, even_ring, {"a": "a", "c1": "c1"})
    with pytest.raises(PresentationMismatch):
        even_ring.gen("a") + loop_ring.gen("c1")


def test_homogeneous_part(even_ring):
    p = even_ring.one() + even_ring.gen("c1") + even_ring.gen("c2")
    assert p.homogeneous_part(4) == even_ring.gen("c2")
    total = even_ring.zero()
    for d in range(even_ring.degree_cap + 1):
        total = total + p.homogeneous_part(d)
    assert total == p
    q = even_ring.poly("a*c1 + a^2")
    assert q.homogeneous_part(4) == q


def test_is_integral(even_ring):
    assert even_ring.poly("2*c1 - a").is_integral
    assert not even_ring.poly("1/2*c1").is_integral
    assert even_ring.zero().is_integral


def test_render_cases(even_ring, loop_ring):
    assert even_ring.zero().render() == "0"
    assert even_ring.one().render() == "1"
    assert even_ring.constant(Fraction(-3, 2)).render() == "-3/2"
    assert (-even_ring.gen("c2")).render() == "-c2"
    assert (loop_ring.gen("z2") * -2 + loop_ring.gen("z1")).render() == "z1 - 2*z2"


def test_generator_validation():
    with pytest.raises(PreconditionError):
        Generator("bad name", 2)
    with pytest.raises(PreconditionError):
        Generator("x", 0)
    with pytest.raises(PreconditionError):
        RingPresentation([("x", 2), ("x", 4)], 8)
    with pytest.raises(PreconditionError):
        RingPresentation([("x", 6)], 4)


def test_exponent_validation(loop_ring):
    with pytest.raises(PreconditionError):
        loop_ring.from_exponents({(2, 0, 0, 0): Fraction(1)})
    with pytest.raises(PreconditionError):
        loop_ring.from_exponents({(0, 7, 0, 0): Fraction(1)})


def test_presentation_json_roundtrip(even_ring):
    data = even_ring.to_json()
    assert data == {
        "generators": [
            {"name": "a", "degree": 2},
            {"name": "c1", "degree": 2},
            {"name": "c2", "degree": 4},
        ],
        "degree_cap": 12,
    }
    assert RingPresentation.from_json(data) == even_ring


def test_inverse_unit(even_ring):
    u = even_ring.poly("2 + a + c2")
    assert u * u.inverse_unit() == even_ring.one()
    with pytest.raises(PreconditionError):
        even_ring.gen("a").inverse_unit()


def test_kernel_implementations_agree(loop_ring):
    rng = random.Random(7)
    for _ in range(30):
        p = random_polynomial(loop_ring, rng)
        q = random_polynomial(loop_ring, rng)
        via_selected = _kernel.mul_terms(
            p._terms, q._terms, loop_ring.degrees, loop_ring.odd_mask_by_gen, loop_ring.degree_cap
        )
        via_python = _poly_py.mul_terms(
            p._terms, q._terms, loop_ring.degrees, loop_ring.odd_mask_by_gen, loop_ring.degree_cap
        )
        assert via_selected == via_python


def test_morphism_rejects_foreign_polynomial(even_ring, loop_ring):
    ident = RingMorphism.identity(even_ring)
    with pytest.raises(PresentationMismatch):
        ident(loop_ring.gen("z1"))


def test_presentation_size_limits():
    with pytest.raises(PreconditionError):
        RingPresentation([(f"x{i}", 2) for i in range(65)], 4)
    with pytest.raises(PreconditionError):
        RingPresentation([("x", 2)], 1 << 15)
    # 64 generators and the maximal cap are accepted
    wide = RingPresentation([(f"x{i}", 2) for i in range(64)], 128)
    assert (wide.gen("x0") * wide.gen("x63")).render() == "x0*x63"
