"""Formal q^{1/2}-series with graded-polynomial coefficients; theta
products and Witten gerbe module characters.

The two character constructions are deliberately independent:

  theta_product   expands per shifted root r the factor
                  prod_{j>=1} (1 - q^j)(1 + s*q^{j-1/2}e^r)(1 + s*q^{j-1/2}e^{-r})
                  with s = -1 for the alternating kind and +1 otherwise;
  lambda_tensor   expands the exterior-power series level by level, via
                  elementary symmetric polynomials in the exponentials
                  of the shifted roots, times the scalar Euler factor.

Their agreement (exact, at every truncation) is the module's central
oracle.  At shift 0 the products reduce to the classical sums
sum_m q^{m^2/2} and sum_m (-1)^m q^{m^2/2}.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .errors import PreconditionError, VerificationError
from .gcring import GradedPolynomial, RingMorphism, RingPresentation
from .symroots import RootModel, _esp, express_in_elementary
from .towers import BundleDescriptor

HALF = Fraction(1, 2)


class WittenKind(Enum):
    """Which infinite tensor product of exterior powers is taken: the
    alternating kind (theta2) or the plain kind (theta3)."""

    THETA2 = "theta2"
    THETA3 = "theta3"

    @property
    def sign(self) -> int:
        return -1 if self is WittenKind.THETA2 else 1

    @classmethod
    def parse(cls, text: str) -> "WittenKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise PreconditionError(f"unknown Witten kind {text!r}") from None


def _as_q_exponent(e) -> Fraction:
    q = Fraction(e)
    if q < 0:
        raise PreconditionError("q-exponents must be nonnegative")
    if q.denominator not in (1, 2):
        raise PreconditionError("q-exponents must be half-integers")
    return q


class HalfQSeries:
    """Finite map q-exponent -> GradedPolynomial, truncated at q_order."""

    __slots__ = ("ring", "q_order", "coefficients")

    def __init__(self, ring: RingPresentation, coefficients: dict, q_order):
        self.ring = ring
        self.q_order = _as_q_exponent(q_order)
        coeffs = {}
        for e, poly in coefficients.items():
            q = _as_q_exponent(e)
            if q > self.q_order:
                continue
            if isinstance(poly, (int, Fraction)):
                poly = ring.constant(poly)
            if poly.ring != ring:
                raise PreconditionError("series coefficients must share one ring")
            if not poly.is_zero:
                coeffs[q] = poly
        self.coefficients = coeffs

    @classmethod
    def unit(cls, ring: RingPresentation, q_order) -> "HalfQSeries":
        return cls(ring, {Fraction(0): ring.one()}, q_order)

    def coefficient(self, e) -> GradedPolynomial:
        return self.coefficients.get(_as_q_exponent(e), self.ring.zero())

    def exponents(self):
        return sorted(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def _check_compatible(self, other: "HalfQSeries"):
        if self.ring != other.ring or self.q_order != other.q_order:
            raise PreconditionError("series must share ring and q_order")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coefficients)
        for e, poly in other.coefficients.items():
            out[e] = out.get(e, self.ring.zero()) + poly
        return HalfQSeries(self.ring, out, self.q_order)

    def __neg__(self):
        return HalfQSeries(
            self.ring, {e: -p for e, p in self.coefficients.items()}, self.q_order
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GradedPolynomial)):
            return HalfQSeries(
                self.ring,
                {e: p * other for e, p in self.coefficients.items()},
                self.q_order,
            )
        return qseries_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("series powers must be nonnegative integers")
        out = HalfQSeries.unit(self.ring, self.q_order)
        for _ in range(exponent):
            out = qseries_mul(out, self)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, HalfQSeries)
            and self.ring == other.ring
            and self.q_order == other.q_order
            and self.coefficients == other.coefficients
        )

    @staticmethod
    def format_exponent(e: Fraction) -> str:
        return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"

    def render(self) -> str:
        if not self.coefficients:
            return "0"
        return "\n".join(
            f"q^{self.format_exponent(e)}: {self.coefficients[e]}" for e in self.exponents()
        )

    def to_json(self) -> dict:
        return {
            "q_order": self.format_exponent(self.q_order),
            "coefficients": {
                self.format_exponent(e): self.coefficients[e].render()
                for e in self.exponents()
            },
        }

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<HalfQSeries order {self.q_order}: {len(self.coefficients)} terms>"


def qseries_mul(f: HalfQSeries, g: HalfQSeries) -> HalfQSeries:
    """Cauchy product, truncated at the shared q_order."""
    f._check_compatible(g)
    out: dict = {}
    for ef, pf in f.coefficients.items():
        for eg, pg in g.coefficients.items():
            e = ef + eg
            if e > f.q_order:
                continue
            prod = pf * pg
            if prod.is_zero:
                continue
            if e in out:
                out[e] = out[e] + prod
            else:
                out[e] = prod
    return HalfQSeries(f.ring, out, f.q_order)


def qseries_div_unit(f: HalfQSeries, g: HalfQSeries) -> HalfQSeries:
    """Solve h with g*h = f; g must have an invertible constant term
    (nonzero scalar part at q^0)."""
    f._check_compatible(g)
    g0 = g.coefficient(0)
    if not g0.constant_term():
        raise PreconditionError("division requires a unit constant term at q^0")
    g0_inv = g0.inverse_unit()
    steps = int(2 * f.q_order)
    h: dict = {}
    for k in range(steps + 1):
        e = Fraction(k, 2)
        acc = f.coefficient(e)
        for eg, pg in g.coefficients.items():
            if eg == 0 or eg > e:
                continue
            prev = h.get(e - eg)
            if prev is not None:
                acc = acc - pg * prev
        value = acc * g0_inv
        if not value.is_zero:
            h[e] = value
    return HalfQSeries(f.ring, h, f.q_order)


def formal_exp(x: GradedPolynomial) -> GradedPolynomial:
    """sum_k x^k / k!, finite because x is nilpotent after truncation."""
    if x.constant_term():
        raise PreconditionError("formal_exp needs a zero constant term")
    out = x.ring.one()
    term = x.ring.one()
    k = 0
    while True:
        k += 1
        term = term * x * Fraction(1, k)
        if term.is_zero:
            break
        out = out + term
    return out


def _euler_factor(ring: RingPresentation, j: int, q_order: Fraction) -> HalfQSeries:
    return HalfQSeries(ring, {0: ring.one(), Fraction(j): -ring.one()}, q_order)


def theta_series(kind: WittenKind, shift: GradedPolynomial, q_order) -> HalfQSeries:
    """prod_{j>=1} (1 - q^j)(1 + sign q^{j-1/2} e^shift)(1 + sign q^{j-1/2} e^{-shift})."""
    q_order = _as_q_exponent(q_order)
    ring = shift.ring
    sign = kind.sign
    e_plus = formal_exp(shift)
    e_minus = formal_exp(-shift)
    series = HalfQSeries.unit(ring, q_order)
    j = 0
    while True:
        j += 1
        half = Fraction(2 * j - 1, 2)
        if half > q_order:
            break
        if Fraction(j) <= q_order:
            series = series * _euler_factor(ring, j, q_order)
        for unit_part in (e_plus, e_minus):
            factor = HalfQSeries(ring, {0: ring.one(), half: unit_part * sign}, q_order)
            series = series * factor
    return series


def gch_witten(model: RootModel, kind: WittenKind, q_order, method: str = "theta_product") -> HalfQSeries:
    """Graded character of the Witten module over the root model, with the
    roots shifted by -a/l.

    method "theta_product" multiplies one theta factor per root;
    "lambda_tensor" expands the exterior-power levels; "both" runs the
    two and insists they agree.
    """
    q_order = _as_q_exponent(q_order)
    if q_order < HALF:
        raise PreconditionError("q_order must be at least 1/2")
    if method == "both":
        via_theta = gch_witten(model, kind, q_order, "theta_product")
        via_lambda = gch_witten(model, kind, q_order, "lambda_tensor")
        if via_theta != via_lambda:
            raise VerificationError(
                "theta_product and lambda_tensor expansions disagree"
            )
        return via_theta
    ring = model.ring
    shifted = model.shifted_roots()
    if method == "theta_product":
        series = HalfQSeries.unit(ring, q_order)
        for r in shifted:
            series = series * theta_series(kind, r, q_order)
        return series
    if method != "lambda_tensor":
        raise PreconditionError(f"unknown method {method!r}")
    sign = kind.sign
    exp_plus = _esp([formal_exp(r) for r in shifted], model.n, ring)
    exp_minus = _esp([formal_exp(-r) for r in shifted], model.n, ring)
    series = HalfQSeries.unit(ring, q_order)
    j = 1
    while Fraction(j) <= q_order:
        series = series * _euler_factor(ring, j, q_order) ** model.n
        j += 1
    v = 0
    while True:
        v += 1
        level = Fraction(2 * v - 1, 2)
        if level > q_order:
            break
        for table in (exp_plus, exp_minus):
            coeffs = {}
            for k in range(model.n + 1):
                e = k * level
                if e > q_order:
                    break
                coeffs[e] = table[k] * (sign ** k)
            series = series * HalfQSeries(ring, coeffs, q_order)
    return series


def normalize_gch(series: HalfQSeries, kind: WittenKind, n: int, q_order) -> HalfQSeries:
    """Divide by the n-th power of the shift-0 theta series.

    The degree-2p coefficients of the result are the q-expansions whose
    modularity is governed by the degree-4 obstruction class; they are
    emitted as formal series, not verified analytically.
    """
    theta0 = theta_series(kind, series.ring.zero(), q_order)
    return qseries_div_unit(series, theta0 ** n)


def descend_gch(series: HalfQSeries, model: RootModel) -> HalfQSeries:
    """Rewrite every coefficient as a polynomial in the fractional classes
    f_k = sigma_k(x - a/l); fails if any coefficient is not a symmetric
    function of the shifted roots alone."""
    ring = model.ring
    replacements = {
        f"x{i}": ring.gen(f"x{i}") + ring.gen("a") * Fraction(1, model.l)
        for i in range(1, model.n + 1)
    }
    unshift = RingMorphism.substitution(ring, replacements)
    f_ring = RingPresentation(
        [(f"f{k}", 2 * k) for k in range(1, model.n + 1)], ring.degree_cap
    )
    images = {"a": f_ring.zero()}
    images.update({name: f_ring.zero() for name in model.extra_even})
    images.update({f"e{k}": f_ring.gen(f"f{k}") for k in range(1, model.n + 1)})
    rename = RingMorphism(model.e_ring, f_ring, images)
    out = {}
    for e in series.exponents():
        coeff = unshift(series.coefficients[e])
        for exps, _ in coeff.terms():
            for i in model.param_indices:
                if exps[i]:
                    raise PreconditionError(
                        "coefficient does not descend: twist class survives at "
                        f"q^{HalfQSeries.format_exponent(e)}"
                    )
        out[e] = rename(express_in_elementary(coeff, model))
    return HalfQSeries(f_ring, out, series.q_order)


def modularity_obstruction(d: BundleDescriptor) -> GradedPolynomial:
    """Degree-4 part of the twisted Chern character:
    (1/2)(c1^{l,a}(E)^2 - 2 c2^{l,a}(E)); its vanishing makes the
    normalized characters modular."""
    f1 = d.fractional(1)
    f2 = d.fractional(2)
    return f1 * f1 * HALF - f2
