from fractions import Fraction

import pytest

from fracchern import qtheta as qt
from fracchern.errors import PreconditionError, SymmetryError
from fracchern.gcring import RingMorphism, RingPresentation
from fracchern.qtheta import HalfQSeries, WittenKind
from fracchern.symroots import RootModel
from fracchern.verify import load_fixture

HALF = Fraction(1, 2)


@pytest.fixture
def scalar_ring():
    return RingPresentation([], 0)


def series(ring, order, **coeffs):
    # keys like q0="1", q1_2="..." are awkward; accept {exponent: text}
    return HalfQSeries(ring, {e: ring.poly(t) for e, t in coeffs.items()}, order)


def test_qseries_mul(scalar_ring):
    one = scalar_ring.one()
    f = HalfQSeries(scalar_ring, {0: one, HALF: one}, 2)
    g = HalfQSeries(scalar_ring, {0: one, HALF: -one}, 2)
    assert f * g == HalfQSeries(scalar_ring, {0: one, 1: -one}, 2)


def test_qseries_div_unit(scalar_ring):
    one = scalar_ring.one()
    f = HalfQSeries(scalar_ring, {0: one, HALF: one * 3, 2: one}, 2)
    assert qt.qseries_div_unit(f, f) == HalfQSeries.unit(scalar_ring, 2)
    geom = qt.qseries_div_unit(
        HalfQSeries.unit(scalar_ring, 1),
        HalfQSeries(scalar_ring, {0: one, HALF: -one}, 1),
    )
    assert geom == HalfQSeries(scalar_ring, {0: one, HALF: one, 1: one}, 1)


def test_div_requires_unit(scalar_ring):
    one = scalar_ring.one()
    f = HalfQSeries.unit(scalar_ring, 2)
    g = HalfQSeries(scalar_ring, {HALF: one}, 2)
    with pytest.raises(PreconditionError):
        qt.qseries_div_unit(f, g)


def test_qseries_validation(scalar_ring):
    with pytest.raises(PreconditionError):
        HalfQSeries(scalar_ring, {Fraction(1, 3): scalar_ring.one()}, 2)
    with pytest.raises(PreconditionError):
        HalfQSeries(scalar_ring, {Fraction(-1, 2): scalar_ring.one()}, 2)
    f = HalfQSeries.unit(scalar_ring, 2)
    g = HalfQSeries.unit(scalar_ring, 3)
    with pytest.raises(PreconditionError):
        qt.qseries_mul(f, g)


def test_formal_exp():
    ring = RingPresentation([("x", 2)], 4)
    x = ring.gen("x")
    assert qt.formal_exp(ring.zero()) == ring.one()
    assert qt.formal_exp(x) == ring.poly("1 + x + 1/2*x^2")
    assert qt.formal_exp(x) * qt.formal_exp(-x) == ring.one()
    with pytest.raises(PreconditionError):
        qt.formal_exp(ring.one())


def test_theta_zero_argument(scalar_ring):
    t3 = qt.theta_series(WittenKind.THETA3, scalar_ring.zero(), 2)
    assert {e: p.constant_term() for e, p in t3.coefficients.items()} == {
        Fraction(0): 1,
        HALF: 2,
        Fraction(2): 2,
    }
    t2 = qt.theta_series(WittenKind.THETA2, scalar_ring.zero(), 2)
    assert {e: p.constant_term() for e, p in t2.coefficients.items()} == {
        Fraction(0): 1,
        HALF: -2,
        Fraction(2): 2,
    }


def test_triple_product_to_order_8(scalar_ring):
    for kind, sign in ((WittenKind.THETA3, 1), (WittenKind.THETA2, -1)):
        series_ = qt.theta_series(kind, scalar_ring.zero(), 8)
        expected = {}
        m = 0
        while Fraction(m * m, 2) <= 8:
            expected[Fraction(m * m, 2)] = Fraction(sign**m * (2 if m else 1))
            m += 1
        got = {e: p.constant_term() for e, p in series_.coefficients.items()}
        assert got == expected


def test_theta_first_coefficient_is_cosh():
    ring = RingPresentation([("x", 2)], 8)
    t3 = qt.theta_series(WittenKind.THETA3, ring.gen("x"), 1)
    # e^x + e^{-x} = 2 + x^2 + x^4/12 at this cap
    assert t3.coefficient(HALF) == ring.poly("2 + x^2 + 1/12*x^4")


def test_theta_evenness():
    ring = RingPresentation([("x", 2)], 8)
    plus = qt.theta_series(WittenKind.THETA2, ring.gen("x"), 3)
    minus = qt.theta_series(WittenKind.THETA2, -ring.gen("x"), 3)
    assert plus == minus


def test_gch_single_untwisted_root_is_theta():
    model = RootModel(1, 1, degree_cap=6)
    kill_a = RingMorphism.substitution(model.ring, {"a": "0"})
    series_ = qt.gch_witten(model, WittenKind.THETA3, 3)
    untwisted = HalfQSeries(
        model.ring,
        {e: kill_a(p) for e, p in series_.coefficients.items()},
        series_.q_order,
    )
    assert untwisted == qt.theta_series(WittenKind.THETA3, model.root(1), 3)


def test_gch_methods_agree():
    model = RootModel(2, 2, degree_cap=8)
    for kind in WittenKind:
        assert qt.gch_witten(model, kind, 3, method="both") == qt.gch_witten(
            model, kind, 3, method="theta_product"
        )


def test_gch_constant_in_roots_part():
    model = RootModel(2, 2, degree_cap=8)
    series_ = qt.gch_witten(model, WittenKind.THETA2, 2)
    kill_roots = RingMorphism.substitution(model.ring, {"x1": "0", "x2": "0"})
    collapsed = HalfQSeries(
        model.ring,
        {e: kill_roots(p) for e, p in series_.coefficients.items()},
        2,
    )
    shift = model.ring.gen("a") * Fraction(-1, 2)
    assert collapsed == qt.theta_series(WittenKind.THETA2, shift, 2) ** 2


def test_gch_a_zero_reduction():
    model = RootModel(2, 1, degree_cap=8)
    kill_a = RingMorphism.substitution(model.ring, {"a": "0"})
    series_ = qt.gch_witten(model, WittenKind.THETA3, 2)
    reduced = HalfQSeries(
        model.ring, {e: kill_a(p) for e, p in series_.coefficients.items()}, 2
    )
    plain = HalfQSeries.unit(model.ring, 2)
    for r in model.roots():
        plain = plain * qt.theta_series(WittenKind.THETA3, r, 2)
    assert reduced == plain


def test_gch_q_order_error():
    model = RootModel(1, 1, degree_cap=4)
    with pytest.raises(PreconditionError):
        qt.gch_witten(model, WittenKind.THETA3, 0)
    with pytest.raises(PreconditionError):
        qt.gch_witten(model, WittenKind.THETA3, 2, method="bogus")


def test_normalize():
    model = RootModel(1, 1, degree_cap=4)
    kind = WittenKind.THETA3
    theta0 = qt.theta_series(kind, model.ring.zero(), 2)
    assert qt.normalize_gch(theta0 ** 1, kind, 1, 2) == HalfQSeries.unit(model.ring, 2)
    series_ = qt.gch_witten(model, kind, 2)
    kill = RingMorphism.substitution(model.ring, {"a": "0"})
    normalized = qt.normalize_gch(
        HalfQSeries(model.ring, {e: kill(p) for e, p in series_.coefficients.items()}, 2),
        kind,
        1,
        2,
    )
    assert normalized.coefficient(0) == model.ring.one()
    for e in normalized.exponents():
        expected = model.ring.one() if e == 0 else model.ring.zero()
        assert normalized.coefficient(e).homogeneous_part(0) == expected


def test_descend_examples():
    model = RootModel(1, 1, degree_cap=4)
    series_ = qt.gch_witten(model, WittenKind.THETA3, 2)
    descended = qt.descend_gch(series_, model)
    assert descended.coefficient(0) == descended.ring.one()
    assert descended.coefficient(HALF) == descended.ring.poly("2 + f1^2")

    model2 = RootModel(2, 2, degree_cap=8)
    for kind in WittenKind:
        qt.descend_gch(qt.gch_witten(model2, kind, 2), model2)


def test_descend_rejects_surviving_twist():
    model = RootModel(2, 2, degree_cap=8)
    bad = HalfQSeries(model.ring, {0: model.ring.gen("a")}, 1)
    with pytest.raises(PreconditionError):
        qt.descend_gch(bad, model)


def test_descend_rejects_asymmetric():
    # a single shifted root is a-free after unshifting but not symmetric
    model = RootModel(2, 2, degree_cap=8)
    bad = HalfQSeries(model.ring, {0: model.ring.poly("x1 - 1/2*a")}, 1)
    with pytest.raises(SymmetryError):
        qt.descend_gch(bad, model)


def test_modularity_obstruction():
    symbolic = load_fixture("symbolic_n4l2.json")
    assert qt.modularity_obstruction(symbolic) == symbolic.ring_m.poly("1/2*f1^2 - f2")
    su = load_fixture("su_n4l2.json")
    assert qt.modularity_obstruction(su) == su.ring_m.poly("-f2")
    u6 = load_fixture("u6_n4l2.json")
    assert qt.modularity_obstruction(u6).is_zero


def test_series_render_and_json(scalar_ring):
    ring = RingPresentation([("x", 2)], 4)
    s = HalfQSeries(ring, {0: ring.one(), HALF: ring.poly("2 + x^2")}, 1)
    assert s.render() == "q^0: 1\nq^1/2: 2 + x^2"
    assert s.to_json() == {
        "q_order": "1",
        "coefficients": {"0": "1", "1/2": "2 + x^2"},
    }


def test_theta_rejects_constant_shift():
    ring = RingPresentation([("x", 2)], 4)
    with pytest.raises(PreconditionError):
        qt.theta_series(WittenKind.THETA3, ring.one(), 2)
