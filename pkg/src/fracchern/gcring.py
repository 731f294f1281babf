"""Truncated graded-commutative polynomial algebras over exact rationals.

A :class:`RingPresentation` is free graded-commutative on its named
generators and truncated above ``degree_cap``: products of odd-degree
generators anticommute, squares of odd generators vanish (we work over
the rationals), and any term of total degree above the cap is dropped.
Elements are kept in a canonical normal form -- a map from monomial to
nonzero coefficient -- so equality is structural and rendering is
deterministic.

Monomials are stored packed into single ints (see _poly_py); the public
surface always deals in exponent tuples over the declared generator
order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._kernel import FIELD_BITS, FIELD_MASK, mul_terms
from .errors import ExpressionError, PreconditionError, PresentationMismatch


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Generator:
    """A ring generator: a name and a positive cohomological degree."""

    name: str
    degree: int

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1

    def __post_init__(self):
        if self.degree < 1:
            raise PreconditionError(f"generator {self.name!r} must have degree >= 1")
        if not self.name.isidentifier():
            raise PreconditionError(f"generator name {self.name!r} is not an identifier")


class RingPresentation:
    """Free graded-commutative algebra on ordered generators, capped in degree."""

    # exponents are packed into 16-bit fields and odd-generator sets into a
    # 64-bit mask in the multiplication kernels
    MAX_GENERATORS = 64
    MAX_DEGREE_CAP = (1 << (FIELD_BITS - 1)) - 1

    def __init__(self, generators, degree_cap: int):
        gens = tuple(
            g if isinstance(g, Generator) else Generator(g[0], g[1]) for g in generators
        )
        names = tuple(g.name for g in gens)
        if len(set(names)) != len(names):
            raise PreconditionError("generator names must be unique")
        if len(gens) > self.MAX_GENERATORS:
            raise PreconditionError(
                f"presentations support at most {self.MAX_GENERATORS} generators"
            )
        if gens and degree_cap < max(g.degree for g in gens):
            raise PreconditionError("degree_cap must be >= every generator degree")
        if not 0 <= degree_cap <= self.MAX_DEGREE_CAP:
            raise PreconditionError(
                f"degree_cap must be between 0 and {self.MAX_DEGREE_CAP}"
            )
        self.generators = gens
        self.degree_cap = degree_cap
        self.names = names
        self.degrees = tuple(g.degree for g in gens)
        self.index = {name: i for i, name in enumerate(names)}
        # odd_mask_by_gen[i] == 1 << i for odd generators, 0 for even ones
        self.odd_mask_by_gen = tuple(
            (1 << i) if g.is_odd else 0 for i, g in enumerate(gens)
        )

    # -- identity -----------------------------------------------------------

    def _key(self):
        return (self.names, self.degrees, self.degree_cap)

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"RingPresentation([{gens}], cap={self.degree_cap})"

    # -- monomial packing ---------------------------------------------------

    def pack(self, exponents) -> int:
        packed = 0
        for i, e in enumerate(exponents):
            packed |= e << (FIELD_BITS * i)
        return packed

    def unpack(self, packed: int) -> tuple:
        out = [0] * len(self.generators)
        i = 0
        while packed:
            out[i] = packed & FIELD_MASK
            packed >>= FIELD_BITS
            i += 1
        return tuple(out)

    def monomial_degree(self, exponents) -> int:
        return sum(e * d for e, d in zip(exponents, self.degrees))

    # -- element constructors -----------------------------------------------

    def zero(self) -> "GradedPolynomial":
        return GradedPolynomial(self, {})

    def one(self) -> "GradedPolynomial":
        return self.constant(1)

    def constant(self, value) -> "GradedPolynomial":
        c = as_fraction(value)
        return GradedPolynomial(self, {0: c} if c else {})

    def gen(self, name: str) -> "GradedPolynomial":
        if name not in self.index:
            raise ExpressionError(f"unknown generator {name!r}")
        exps = [0] * len(self.generators)
        exps[self.index[name]] = 1
        return self.from_exponents({tuple(exps): Fraction(1)})

    def from_exponents(self, terms) -> "GradedPolynomial":
        """Build an element from {exponent tuple: coefficient}, validating."""
        packed_terms = {}
        for exps, coef in terms.items():
            c = as_fraction(coef)
            if not c:
                continue
            if len(exps) != len(self.generators):
                raise PreconditionError("exponent tuple length mismatch")
            for e, g in zip(exps, self.generators):
                if e < 0:
                    raise PreconditionError("negative exponent")
                if g.is_odd and e > 1:
                    raise PreconditionError(f"odd generator {g.name} squared is zero")
            if self.monomial_degree(exps) > self.degree_cap:
                raise PreconditionError("monomial exceeds degree cap")
            key = self.pack(exps)
            packed_terms[key] = packed_terms.get(key, Fraction(0)) + c
        return GradedPolynomial(self, {k: v for k, v in packed_terms.items() if v})

    def poly(self, text: str) -> "GradedPolynomial":
        """Parse an expression ("c2 - 3/2*a*c1 + 3/2*a^2") over this ring."""
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    # -- JSON schema ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": [{"name": g.name, "degree": g.degree} for g in self.generators],
            "degree_cap": self.degree_cap,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RingPresentation":
        try:
            gens = [(g["name"], int(g["degree"])) for g in data["generators"]]
            cap = int(data["degree_cap"])
        except (KeyError, TypeError) as exc:
            raise ExpressionError(f"malformed ring presentation: {exc}") from exc
        return cls(gens, cap)


class GradedPolynomial:
    """Element of a RingPresentation in canonical normal form.

    Immutable after construction; all arithmetic returns new objects.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: RingPresentation, terms: dict):
        self.ring = ring
        self._terms = terms

    # -- basic views ----------------------------------------------------------

    def terms(self):
        """Sorted [(exponent tuple, coefficient)]: by total degree, then
        exponent-vector lexicographic in declared generator order."""
        decoded = [(self.ring.unpack(m), c) for m, c in self._terms.items()]
        decoded.sort(key=lambda t: (self.ring.monomial_degree(t[0]), t[0]))
        return decoded

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest total degree among stored terms (0 for the zero element)."""
        if not self._terms:
            return 0
        return max(self.ring.monomial_degree(self.ring.unpack(m)) for m in self._terms)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {self.ring.monomial_degree(self.ring.unpack(m)) for m in self._terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def homogeneous_part(self, d: int) -> "GradedPolynomial":
        kept = {
            m: c
            for m, c in self._terms.items()
            if self.ring.monomial_degree(self.ring.unpack(m)) == d
        }
        return GradedPolynomial(self.ring, kept)

    @property
    def is_integral(self) -> bool:
        """True when every coefficient is an integer."""
        return all(c.denominator == 1 for c in self._terms.values())

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def coefficient(self, exponents) -> Fraction:
        return self._terms.get(self.ring.pack(exponents), Fraction(0))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GradedPolynomial):
            if other.ring != self.ring:
                raise PresentationMismatch(
                    "operands live over different ring presentations"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in q._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return GradedPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            if not c:
                return self.ring.zero()
            return GradedPolynomial(self.ring, {m: v * c for m, v in self._terms.items()})
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = mul_terms(
            self._terms,
            q._terms,
            self.ring.degrees,
            self.ring.odd_mask_by_gen,
            self.ring.degree_cap,
        )
        return GradedPolynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError("polynomial powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def inverse_unit(self) -> "GradedPolynomial":
        """Inverse of c + nilpotent (c a nonzero scalar); finite by truncation."""
        c = self.constant_term()
        if not c:
            raise PreconditionError("element has no invertible constant term")
        nil = (self - c) * (Fraction(1) / c)
        # 1/(c(1+nil)) = (1/c) * sum (-nil)^k, nilpotent above the cap
        out = self.ring.one()
        power = self.ring.one()
        for _ in range(self.ring.degree_cap):
            power = power * (-nil)
            if power.is_zero:
                break
            out = out + power
        return out * (Fraction(1) / c)

    # -- comparison / rendering -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def render(self) -> str:
        items = self.terms()
        if not items:
            return "0"
        chunks = []
        for i, (exps, coef) in enumerate(items):
            factors = [
                f"{name}^{e}" if e > 1 else name
                for name, e in zip(self.ring.names, exps)
                if e
            ]
            magnitude = abs(coef)
            if factors:
                body = "*".join(factors)
                if magnitude != 1:
                    body = f"{magnitude}*{body}"
            else:
                body = str(magnitude)
            if i == 0:
                chunks.append(body if coef > 0 else f"-{body}")
            else:
                chunks.append(f" + {body}" if coef > 0 else f" - {body}")
        return "".join(chunks)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<{self.render()}>"


def transplant(p: GradedPolynomial, target: RingPresentation) -> GradedPolynomial:
    """Rebuild p over another presentation, matching generators by name.

    Every generator actually appearing in p must exist in the target with
    the same degree; generators of either ring not involved are ignored.
    """
    out_terms = {}
    for exps, coef in p.terms():
        new = [0] * len(target.generators)
        for i, e in enumerate(exps):
            if not e:
                continue
            name = p.ring.names[i]
            j = target.index.get(name)
            if j is None:
                raise PreconditionError(
                    f"generator {name} does not exist in the target presentation"
                )
            if target.degrees[j] != p.ring.degrees[i]:
                raise PreconditionError(f"generator {name} changes degree")
            new[j] = e
        key = tuple(new)
        out_terms[key] = out_terms.get(key, Fraction(0)) + coef
    return target.from_exponents(out_terms)


class RingMorphism:
    """Degree-preserving ring homomorphism given by generator images."""

    def __init__(self, source: RingPresentation, target: RingPresentation, images: dict):
        self.source = source
        self.target = target
        imgs = {}
        for g in source.generators:
            if g.name not in images:
                raise PreconditionError(f"no image given for generator {g.name}")
            img = images[g.name]
            if isinstance(img, str):
                img = target.poly(img)
            if img.ring != target:
                raise PresentationMismatch(f"image of {g.name} is not over the target")
            if not img.is_zero and not img.is_homogeneous(g.degree):
                raise PreconditionError(
                    f"image of {g.name} must be homogeneous of degree {g.degree}"
                )
            imgs[g.name] = img
        self.images = imgs

    @classmethod
    def identity(cls, ring: RingPresentation) -> "RingMorphism":
        return cls(ring, ring, {g.name: ring.gen(g.name) for g in ring.generators})

    @classmethod
    def substitution(cls, ring: RingPresentation, replacements: dict) -> "RingMorphism":
        """Endomorphism replacing the named generators, fixing the rest."""
        images = {g.name: ring.gen(g.name) for g in ring.generators}
        for name, value in replacements.items():
            if name not in ring.index:
                raise ExpressionError(f"unknown generator {name!r}")
            images[name] = ring.poly(value) if isinstance(value, str) else value
        return cls(ring, ring, images)

    @classmethod
    def rename(cls, source: RingPresentation, target: RingPresentation, mapping: dict) -> "RingMorphism":
        """Generator-to-generator map; unmapped names map to their namesakes."""
        images = {}
        for g in source.generators:
            images[g.name] = target.gen(mapping.get(g.name, g.name))
        return cls(source, target, images)

    def __call__(self, p: GradedPolynomial) -> GradedPolynomial:
        if p.ring != self.source:
            raise PresentationMismatch("polynomial is not over the morphism source")
        power_cache: dict = {}
        out = self.target.zero()
        for exps, coef in p.terms():
            term = self.target.constant(coef)
            for i, e in enumerate(exps):
                if not e:
                    continue
                name = self.source.names[i]
                key = (name, e)
                img = power_cache.get(key)
                if img is None:
                    img = self.images[name] ** e
                    power_cache[key] = img
                term = term * img
            out = out + term
        return out

    def then(self, after: "RingMorphism") -> "RingMorphism":
        """Composite morphism: first self, then ``after``."""
        if after.source != self.target:
            raise PresentationMismatch("morphisms do not compose")
        return RingMorphism(
            self.source, after.target, {name: after(img) for name, img in self.images.items()}
        )

    def __repr__(self):
        ims = ", ".join(f"{n} -> {p}" for n, p in self.images.items())
        return f"RingMorphism({ims})"
