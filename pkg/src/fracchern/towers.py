"""Generator-level morphism tables of the two lifting towers, obstruction
classes, lift-consequence identities and structure counting.

Both towers are modeled purely on cohomology generators: a space is its
truncated ring presentation (see ``spaces``) and a map is the table of
generator images of its pullback.  The fractional tower kills
(c1 - s*g, c1Q) and then (c2 - s(n-1)/(2l)*cb1^2, c2Q); the loop tower
kills (z1 - s*h, z1Q), (c1 - s*g, c1Q) and (z2 + s/l*zb1*cb1, z2Q).
Bundle-level data enters through :class:`BundleDescriptor` (JSON), and
the obstruction/lift/counting operations evaluate the corresponding
classes on it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import transgression
from .errors import ExpressionError, PreconditionError, VerificationError
from .gcring import GradedPolynomial, RingMorphism, RingPresentation, transplant
from .spaces import SPACE_NAMES, space_ring
from .transgression import DerivationTable, free_suspend

LEVELS = ("fracSU", "fracU6", "loopU", "loopSU")

MORPHISM_NAMES = (
    "phi",
    "phi2",
    "phi3",
    "xi2",
    "xi3",
    "Lphi",
    "Lphi2",
    "Bi2l",
    "Bi3l",
    "Biota2l",
    "BhatLi2l",
    "Biota3l",
    "Br",
    "BLr",
    "Bmu_s",
    "Bepsilon",
    "Brho_s",
    "BLrho_s",
    "BLi2l",
)


def _check_n_l(n: int, l: int, require_higher: bool = False) -> int:
    if n < 1 or l < 1:
        raise PreconditionError("n and l must be positive")
    if n % l:
        raise PreconditionError(f"l={l} must divide n={n}")
    if require_higher and l == 1:
        raise PreconditionError("the higher towers require l > 1")
    return n // l


def _cap(n: int, degree_cap: int | None) -> int:
    return max(degree_cap or 12, 2 * n)


# ---------------------------------------------------------------------------
# universal pullback classes
# ---------------------------------------------------------------------------


def phi_pullback(n: int, l: int, k: int, degree_cap: int | None = None) -> GradedPolynomial:
    """Pullback of the k-th rational Chern class to BU(1) x BU(n):

        sum_{i=0..k} (-1/l)^i C(n-k+i, i) g^i c_{k-i}
    """
    _check_n_l(n, l)
    if not 0 <= k <= n:
        raise PreconditionError(f"k={k} out of range 0..{n}")
    ring = space_ring("BU1xBUn", n=n, degree_cap=_cap(n, degree_cap))
    out = ring.zero()
    g_idx = ring.index["g"]
    for i in range(k + 1):
        coef = Fraction(-1, l) ** i * comb(n - k + i, i)
        exps = [0] * len(ring.generators)
        exps[g_idx] = i
        if k - i >= 1:
            exps[ring.index[f"c{k - i}"]] = 1
        out = out + ring.from_exponents({tuple(exps): coef})
    return out


def phi2_pullback(n: int, l: int, k: int, degree_cap: int | None = None) -> GradedPolynomial:
    """Pullback of the k-th rational Chern class (k >= 2) to BU(n)_l:

        sum_{i=0..k-2} (-1/l)^i C(n-k+i, i) cb1^i c_{k-i}
          + (-1/l)^k (1-k) C(n, k) cb1^k
    """
    _check_n_l(n, l, require_higher=True)
    if not 2 <= k <= n:
        raise PreconditionError(f"k={k} must satisfy 2 <= k <= n")
    ring = space_ring("BUn_l", n=n, l=l, degree_cap=_cap(n, degree_cap))
    out = ring.zero()
    cb_idx = ring.index["cb1"]
    for i in range(k - 1):
        coef = Fraction(-1, l) ** i * comb(n - k + i, i)
        exps = [0] * len(ring.generators)
        exps[cb_idx] = i
        exps[ring.index[f"c{k - i}"]] = 1
        out = out + ring.from_exponents({tuple(exps): coef})
    top = [0] * len(ring.generators)
    top[cb_idx] = k
    out = out + ring.from_exponents(
        {tuple(top): Fraction(-1, l) ** k * (1 - k) * comb(n, k)}
    )
    return out


def _lphi_z2_image(n: int, l: int, degree_cap: int) -> GradedPolynomial:
    """Loop pullback of z2Q to BLU(1) x BLU(n), built through the
    transgression of the c2Q pullback:

        nu(phi*(c2Q)) - (z1 - s*h)(c1 - s*g)
    """
    s = n // l
    table = transgression.builtin_table("BU1xBUn", n=max(n, 2), degree_cap=degree_cap)
    phi_c2 = phi_pullback(n, l, 2, degree_cap)
    # the k=2 image involves only g, c1, c2; rebuild it over the table source
    suspended = free_suspend(table, transplant(phi_c2, table.source))
    loop_ring = table.target
    correction = loop_ring.poly(f"(z1 - {s}*h)*(c1 - {s}*g)")
    return suspended - correction


@dataclass
class MorphismTable:
    """A named generator-image table between two registry rings."""

    name: str
    n: int
    l: int
    morphism: RingMorphism

    def __call__(self, p: GradedPolynomial) -> GradedPolynomial:
        return self.morphism(p)

    @property
    def images(self):
        return self.morphism.images


def builtin_morphism(name: str, n: int, l: int, degree_cap: int | None = None) -> MorphismTable:
    """Generator-image table for a named map of the towers."""
    cap = _cap(n, degree_cap)
    higher = name not in ("phi", "Lphi", "Br", "BLr", "Bmu_s", "Bepsilon", "Brho_s", "BLrho_s")
    s = _check_n_l(n, l, require_higher=higher)

    def ring(space):
        return space_ring(space, n=n, l=l, degree_cap=cap)

    if name == "phi":
        images = {f"c{k}Q": phi_pullback(n, l, k, cap) for k in range(1, n + 1)}
        m = RingMorphism(ring("BUnQ"), ring("BU1xBUn"), images)
    elif name == "phi2":
        images = {f"c{k}Q": phi2_pullback(n, l, k, cap) for k in range(2, n + 1)}
        m = RingMorphism(ring("BSUnQ"), ring("BUn_l"), images)
    elif name == "phi3":
        bi3l = builtin_morphism("Bi3l", n, l, cap).morphism
        images = {f"c{k}Q": bi3l(phi2_pullback(n, l, k, cap)) for k in range(3, n + 1)}
        m = RingMorphism(ring("BU6nQ"), ring("BU6n_l"), images)
    elif name == "xi2":
        tgt = ring("BLUbar_n_l")
        m = RingMorphism(
            ring("BL0UnQ"),
            tgt,
            {"c1Q": tgt.poly(f"c1 - {s}*g"), "z2Q": tgt.poly(f"z2 + 1/{l}*zb1*c1")},
        )
    elif name == "xi3":
        tgt = ring("BhatLSUn_l")
        coef = Fraction(s * (n - 1), 2 * l)
        m = RingMorphism(ring("BhatLSUnQ"), tgt, {"c2Q": tgt.poly(f"c2 - {coef}*cb1^2")})
    elif name == "Lphi":
        tgt = ring("BLU1xBLUn")
        images = {
            "z1Q": tgt.poly(f"z1 - {s}*h"),
            "c1Q": transplant(phi_pullback(n, l, 1, cap), tgt),
            "z2Q": _lphi_z2_image(n, l, cap),
            "c2Q": transplant(phi_pullback(n, l, 2, cap), tgt),
        }
        m = RingMorphism(ring("BLUnQ"), tgt, images)
    elif name == "Lphi2":
        tgt = ring("BLUn_l")
        coef = Fraction(s * (n - 1), 2 * l)
        m = RingMorphism(
            ring("BLSUnQ"),
            tgt,
            {
                "z2Q": tgt.poly(f"z2 + {Fraction(s, l)}*zb1*cb1"),
                "c2Q": tgt.poly(f"c2 - {coef}*cb1^2"),
            },
        )
    elif name == "Bi2l":
        tgt = ring("BUn_l")
        images = {"g": tgt.gen("cb1"), "c1": tgt.gen("cb1") * s}
        images.update({f"c{k}": tgt.gen(f"c{k}") for k in range(2, n + 1)})
        m = RingMorphism(ring("BU1xBUn"), tgt, images)
    elif name == "Bi3l":
        tgt = ring("BU6n_l")
        coef = Fraction(s * (n - 1), 2 * l)
        images = {"cb1": tgt.gen("cb1"), "c2": tgt.poly(f"{coef}*cb1^2")}
        images.update({f"c{k}": tgt.gen(f"c{k}") for k in range(3, n + 1)})
        m = RingMorphism(ring("BUn_l"), tgt, images)
    elif name == "Biota2l":
        tgt = ring("BLUbar_n_l")
        m = RingMorphism(
            ring("BLU1xBLUn"),
            tgt,
            {
                "h": tgt.gen("zb1"),
                "g": tgt.gen("g"),
                "z1": tgt.gen("zb1") * s,
                "c1": tgt.gen("c1"),
                "z2": tgt.gen("z2"),
                "c2": tgt.gen("c2"),
            },
        )
    elif name == "BhatLi2l":
        tgt = ring("BLUn_l")
        m = RingMorphism(
            ring("BLUbar_n_l"),
            tgt,
            {
                "g": tgt.gen("cb1"),
                "zb1": tgt.gen("zb1"),
                "c1": tgt.gen("cb1") * s,
                "z2": tgt.gen("z2"),
                "c2": tgt.gen("c2"),
            },
        )
    elif name == "Biota3l":
        tgt = ring("BhatLSUn_l")
        m = RingMorphism(
            ring("BLUn_l"),
            tgt,
            {
                "zb1": tgt.gen("zb1"),
                "cb1": tgt.gen("cb1"),
                "z2": tgt.poly(f"-{Fraction(s, l)}*zb1*cb1"),
                "c2": tgt.gen("c2"),
            },
        )
    elif name == "Br":
        tgt = ring("BUn")
        m = RingMorphism(ring("BSpinc"), tgt, {"t": "c1", "q1": "-c2"})
    elif name == "BLr":
        tgt = ring("BLUn")
        m = RingMorphism(ring("BLSpinc"), tgt, {"sp1": "z1", "t": "c1", "mu": "-z2"})
    elif name == "Bmu_s":
        tgt = ring("BU1xBUn")
        m = RingMorphism(ring("BU1"), tgt, {"g": tgt.poly(f"c1 - {s}*g")})
    elif name == "Bepsilon":
        m = RingMorphism(ring("S1"), ring("BLUn"), {"h": "z1"})
    elif name == "Brho_s":
        tgt = ring("BUn_l")
        images = {"c1": tgt.gen("cb1") * s}
        images.update({f"c{k}": tgt.gen(f"c{k}") for k in range(2, n + 1)})
        m = RingMorphism(ring("BUn"), tgt, images)
    elif name == "BLrho_s":
        tgt = ring("BLUn_l")
        m = RingMorphism(
            ring("BLUn"),
            tgt,
            {"z1": tgt.gen("zb1") * s, "c1": tgt.gen("cb1") * s, "z2": "z2", "c2": "c2"},
        )
    elif name == "BLi2l":
        tgt = ring("BLUn_l")
        m = RingMorphism(
            ring("BLU1xBLUn"),
            tgt,
            {
                "h": tgt.gen("zb1"),
                "g": tgt.gen("cb1"),
                "z1": tgt.gen("zb1") * s,
                "c1": tgt.gen("cb1") * s,
                "z2": tgt.gen("z2"),
                "c2": tgt.gen("c2"),
            },
        )
    else:
        raise PreconditionError(f"unknown morphism table {name!r}")
    return MorphismTable(name, n, l, m)


def xi2_pullback(n: int, l: int, which: str, degree_cap: int | None = None) -> GradedPolynomial:
    """Level-1 loop pullback: which="c1Q" gives c1 - s*g, which="z2Q" gives
    z2 + 1/l*zb1*c1.

    The z2Q class is additionally recomputed through the transgression
    pipeline (nu of the c2Q pullback minus the correction term, pushed
    through the component-collapse table) and the two must agree.
    """
    if which not in ("c1Q", "z2Q"):
        raise PreconditionError("which must be 'c1Q' or 'z2Q'")
    cap = _cap(n, degree_cap)
    table = builtin_morphism("xi2", n, l, cap)
    value = table.images[which]
    if which == "z2Q":
        biota2l = builtin_morphism("Biota2l", n, l, cap)
        pipeline = biota2l(_lphi_z2_image(n, l, cap))
        if pipeline != value:
            raise VerificationError(
                f"transgression pipeline disagrees with the table: {pipeline} != {value}"
            )
    return value


def lphi2_z2(n: int, l: int, degree_cap: int | None = None) -> GradedPolynomial:
    """Loop pullback of z2Q to BLU(n)_l: z2 + s/l*zb1*cb1, cross-checked by
    two independent routes (transgression of the level-1 pullback, and the
    loop-tower factorization)."""
    _check_n_l(n, l, require_higher=True)
    cap = _cap(n, degree_cap)
    value = builtin_morphism("Lphi2", n, l, cap).images["z2Q"]

    # route 1: suspend phi2*(c2Q) over BU(n)_l
    table = transgression.builtin_table("BUn_l", n=n, l=l, degree_cap=cap)
    route1 = free_suspend(table, transplant(phi2_pullback(n, l, 2, cap), table.source))
    # route 2: collapse the level-1 class through the factorization
    bhat = builtin_morphism("BhatLi2l", n, l, cap)
    route2 = bhat(builtin_morphism("xi2", n, l, cap).images["z2Q"])
    if route1 != value or route2 != value:
        raise VerificationError(
            f"cross-check failed: table={value}, suspension={route1}, factorization={route2}"
        )
    return value


# ---------------------------------------------------------------------------
# abelian groups (structure counting)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroupDesc:
    """Finitely generated abelian group: free rank plus torsion orders."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise PreconditionError("rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if any(t < 2 for t in self.torsion):
            raise PreconditionError("torsion orders must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def render(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()

    @classmethod
    def from_json(cls, data) -> "AbelianGroupDesc":
        if not isinstance(data, dict):
            raise ExpressionError("group descriptor must be an object")
        return cls(int(data.get("rank", 0)), tuple(int(t) for t in data.get("torsion", ())))


def count_structures(level: str, hM: dict | None, hLM: dict | None = None) -> AbelianGroupDesc:
    """The group parametrizing level structures: H^1(M), H^3(M), H^0(LM)
    or H^2(LM)."""
    wanted = {"fracSU": ("M", 1), "fracU6": ("M", 3), "loopU": ("LM", 0), "loopSU": ("LM", 2)}
    if level not in wanted:
        raise PreconditionError(f"unknown level {level!r}")
    side, degree = wanted[level]
    table = hM if side == "M" else hLM
    if table is None or degree not in table:
        raise PreconditionError(
            f"level {level} needs H^{degree}({side}) in the descriptor cohomology"
        )
    return table[degree]


# ---------------------------------------------------------------------------
# bundle descriptors
# ---------------------------------------------------------------------------


@dataclass
class LoopData:
    ring_ly: RingPresentation
    ring_lm: RingPresentation
    pi_star: RingMorphism
    a: GradedPolynomial
    afrak: GradedPolynomial
    z: list
    c: list
    zfrac: list
    frac: list
    nu_y: DerivationTable | None = None
    nu_m: DerivationTable | None = None
    side_conditions_y: dict = field(default_factory=dict)
    side_conditions_m: dict = field(default_factory=dict)


@dataclass
class BundleDescriptor:
    """Class-level model of a fractional bundle: rings of Y and M, the
    pullback along pi, the twist class a, the Chern classes of E and the
    candidate fractional classes, plus optional loop data and cohomology
    groups for counting."""

    n: int
    l: int
    ring_y: RingPresentation
    ring_m: RingPresentation
    pi_star: RingMorphism
    a: GradedPolynomial
    c: list
    frac: list
    loop: LoopData | None = None
    cohomology_m: dict | None = None
    cohomology_lm: dict | None = None

    @property
    def s(self) -> int:
        return self.n // self.l

    def chern(self, k: int) -> GradedPolynomial:
        if not 1 <= k <= len(self.c):
            raise PreconditionError(f"descriptor has no class c{k}(E)")
        return self.c[k - 1]

    def fractional(self, k: int) -> GradedPolynomial:
        if not 1 <= k <= len(self.frac):
            raise PreconditionError(f"descriptor has no fractional class of index {k}")
        return self.frac[k - 1]

    def require_loop(self) -> LoopData:
        if self.loop is None:
            raise PreconditionError("descriptor carries no loop data")
        return self.loop


def _parse_classes(ring, entries, expected_degrees, what):
    out = []
    for k, text in enumerate(entries, start=1):
        poly = ring.poly(text)
        degree = expected_degrees(k)
        if not poly.is_zero and not poly.is_homogeneous(degree):
            raise ExpressionError(
                f"{what} #{k} must be homogeneous of degree {degree}: got {poly}"
            )
        out.append(poly)
    return out


def _parse_groups(data) -> dict:
    return {int(k): AbelianGroupDesc.from_json(v) for k, v in data.items()}


def descriptor_from_json(data: dict) -> BundleDescriptor:
    try:
        n = int(data["n"])
        l = int(data["l"])
        ring_y = RingPresentation.from_json(data["ringY"])
        ring_m = RingPresentation.from_json(data["ringM"])
        classes = data["classes"]
    except KeyError as exc:
        raise ExpressionError(f"descriptor missing field {exc}") from exc
    _check_n_l(n, l)
    pi_star = RingMorphism(ring_m, ring_y, dict(data.get("pi_star", {})))
    a = ring_y.poly(classes["a"])
    if not a.is_zero and not a.is_homogeneous(2):
        raise ExpressionError("class a must have degree 2")
    c = _parse_classes(ring_y, classes.get("c", []), lambda k: 2 * k, "c_k(E)")
    frac = _parse_classes(ring_m, classes.get("frac", []), lambda k: 2 * k, "fractional class")
    loop = None
    if "loop" in data:
        lo = data["loop"]
        ring_ly = RingPresentation.from_json(lo["ringLY"])
        ring_lm = RingPresentation.from_json(lo["ringLM"])
        lo_pi = RingMorphism(ring_lm, ring_ly, dict(lo.get("pi_star", {})))
        lcl = lo["classes"]
        la = ring_ly.poly(lcl["a"])
        afrak = ring_ly.poly(lcl["afrak"])
        z = _parse_classes(ring_ly, lcl.get("z", []), lambda k: 2 * k - 1, "z_k(LE)")
        lc = _parse_classes(ring_ly, lcl.get("c", []), lambda k: 2 * k, "c_k(LE)")
        zfrac = _parse_classes(ring_lm, lcl.get("zfrac", []), lambda k: 2 * k - 1, "loop fractional z")
        lfrac = _parse_classes(ring_lm, lcl.get("frac", []), lambda k: 2 * k, "loop fractional c")
        nu_y = None
        if "nuY" in lo:
            nu_y = DerivationTable(ring_y, ring_ly, dict(lo["nuY"]))
        nu_m = None
        if "nuM" in lo:
            nu_m = DerivationTable(ring_m, ring_lm, dict(lo["nuM"]))
        conditions = lo.get("side_conditions", {})
        loop = LoopData(
            ring_ly,
            ring_lm,
            lo_pi,
            la,
            afrak,
            z,
            lc,
            zfrac,
            lfrac,
            nu_y,
            nu_m,
            dict(conditions.get("Y", {})),
            dict(conditions.get("M", {})),
        )
    cohom = data.get("cohomology", {})
    return BundleDescriptor(
        n,
        l,
        ring_y,
        ring_m,
        pi_star,
        a,
        c,
        frac,
        loop,
        _parse_groups(cohom["hM"]) if "hM" in cohom else None,
        _parse_groups(cohom["hLM"]) if "hLM" in cohom else None,
    )


def load_descriptor(path_or_file) -> BundleDescriptor:
    if hasattr(path_or_file, "read"):
        data = json.load(path_or_file)
    else:
        with open(path_or_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    return descriptor_from_json(data)


# ---------------------------------------------------------------------------
# obstruction pairs, lift consequences, transgression of obstructions
# ---------------------------------------------------------------------------


@dataclass
class ObstructionPair:
    level: str
    upstairs: GradedPolynomial
    downstairs: GradedPolynomial
    vanishes: bool
    compatible: bool
    note: str = ""

    def render(self) -> str:
        lines = [
            f"obstruction {self.level}:",
            f"  upstairs   = {self.upstairs}",
            f"  downstairs = {self.downstairs}",
            f"  vanishes: {'yes' if self.vanishes else 'no'}",
            f"  pullback compatibility: {'ok' if self.compatible else 'MISMATCH'}",
        ]
        if self.note:
            lines.append(f"  note: {self.note}")
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def _expected_pullback(level: str, d: BundleDescriptor):
    """pi* of the downstairs class written in upstairs classes (exact
    consequence of the root-shift formulas, no side conditions)."""
    s = d.s
    n, l = d.n, d.l
    if level == "fracSU":
        return d.chern(1) - d.a * s
    if level == "fracU6":
        return (
            d.chern(2)
            - d.a * d.chern(1) * Fraction(n - 1, l)
            + d.a * d.a * Fraction(s * (n - 1), 2 * l)
        )
    lo = d.require_loop()
    if level == "loopU":
        return lo.z[0] - lo.afrak * s
    if level == "loopSU":
        return (
            lo.z[1]
            + lo.afrak * lo.c[0] * Fraction(1, l)
            + lo.z[0] * lo.a * Fraction(1, l)
            - lo.afrak * lo.a * Fraction(s, l)
        )
    raise PreconditionError(f"unknown level {level!r}")


def obstruction(level: str, d: BundleDescriptor) -> ObstructionPair:
    """The obstruction pair of the level, with its pullback compatibility:

      fracSU: (c1(E) - s*a,                 c1^{l,a}(E))
      fracU6: (c2(E) - s(n-1)/(2l)*a^2,     c2^{l,a}(E))    [needs fracSU]
      loopU:  (z1(LE) - s*af,               z1^{l,a}(LE))
      loopSU: (z2(LE) + 1/n*z1(LE)c1(LE),   z2^{l,a}(LE))   [needs fracSU]
    """
    if level not in LEVELS:
        raise PreconditionError(f"unknown level {level!r}")
    _check_n_l(d.n, d.l, require_higher=True)
    s = d.s
    note = ""
    if level == "fracSU":
        up = d.chern(1) - d.a * s
        down = d.fractional(1)
        pi = d.pi_star
    elif level == "fracU6":
        previous = obstruction("fracSU", d)
        if not previous.vanishes:
            raise PreconditionError(
                "fracU6 requires a fractional SU structure (fracSU obstruction is nonzero)"
            )
        up = d.chern(2) - d.a * d.a * Fraction(s * (d.n - 1), 2 * d.l)
        down = d.fractional(2)
        pi = d.pi_star
    elif level == "loopU":
        lo = d.require_loop()
        up = lo.z[0] - lo.afrak * s
        down = lo.zfrac[0]
        pi = lo.pi_star
    else:  # loopSU
        previous = obstruction("fracSU", d)
        if not previous.vanishes:
            raise PreconditionError(
                "loopSU requires a fractional SU structure (fracSU obstruction is nonzero)"
            )
        lo = d.require_loop()
        if lo.c[0] != lo.a * s or lo.z[0] != lo.afrak * s:
            raise PreconditionError(
                "loopSU side conditions c1(LE) = s*a, z1(LE) = s*af do not hold"
            )
        up = lo.z[1] + lo.z[0] * lo.c[0] * Fraction(1, d.n)
        down = lo.zfrac[1]
        pi = lo.pi_star
    compatible = pi(down) == _expected_pullback(level, d)
    vanishes = up.is_zero and down.is_zero
    if vanishes and level in ("loopU", "loopSU"):
        note = (
            "lifting this loop structure to its non-loop counterpart is "
            "undecidable at ring level"
        )
    return ObstructionPair(level, up, down, vanishes, compatible, note)


@dataclass
class IdentityCheck:
    description: str
    lhs: GradedPolynomial
    rhs: GradedPolynomial

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self):
        verdict = "ok" if self.ok else f"FAILED ({self.lhs} != {self.rhs})"
        return f"{self.description}: {verdict}"


def lift_consequences(level: str, d: BundleDescriptor) -> list:
    """Class identities forced by the existence of the level's lift."""
    pair = obstruction(level, d)
    if not pair.vanishes:
        raise PreconditionError(f"{level} obstruction does not vanish; no lift exists")
    s = d.s
    checks = []
    if level in ("fracSU", "fracU6"):
        checks.append(IdentityCheck("c1(E) = s*a", d.chern(1), d.a * s))
    if level == "fracU6":
        checks.append(
            IdentityCheck(
                "c2(E) = s(n-1)/(2l)*a^2",
                d.chern(2),
                d.a * d.a * Fraction(s * (d.n - 1), 2 * d.l),
            )
        )
    if level in ("loopU", "loopSU"):
        lo = d.require_loop()
        checks.append(IdentityCheck("z1(LE) = s*af", lo.z[0], lo.afrak * s))
    if level == "loopSU":
        lo = d.require_loop()
        checks.append(IdentityCheck("c1(LE) = s*a", lo.c[0], lo.a * s))
        checks.append(
            IdentityCheck(
                "z2(LE) = -(s/l)*af*a",
                lo.z[1],
                -lo.afrak * lo.a * Fraction(s, d.l),
            )
        )
    return checks


@dataclass
class TransgressionReport:
    level: str
    upstairs_transgressed: GradedPolynomial
    upstairs_loop: GradedPolynomial
    downstairs_transgressed: GradedPolynomial
    downstairs_loop: GradedPolynomial
    upstairs_equal: bool
    downstairs_equal: bool

    @property
    def ok(self) -> bool:
        return self.upstairs_equal and self.downstairs_equal

    def render(self) -> str:
        mark = lambda b: "==" if b else "!="
        return "\n".join(
            [
                f"transgression {self.level}:",
                f"  nu(upstairs)   = {self.upstairs_transgressed} "
                f"{mark(self.upstairs_equal)} {self.upstairs_loop}",
                f"  nu(downstairs) = {self.downstairs_transgressed} "
                f"{mark(self.downstairs_equal)} {self.downstairs_loop}",
            ]
        )

    def __str__(self):
        return self.render()


def transgress_obstruction(level: str, d: BundleDescriptor) -> TransgressionReport:
    """Transgress a non-loop obstruction pair and compare with the loop pair.

    level is "fracSU->loopU" or "fracU6->loopSU"; the second comparison is
    taken after imposing the descriptor's side conditions (c1 = s*a and
    z1 = s*af upstairs, vanishing of the level-1 fractional classes
    downstairs), which is where the identity lives.
    """
    lo = d.require_loop()
    if lo.nu_y is None or lo.nu_m is None:
        raise PreconditionError("descriptor loop data carries no transgression tables")
    s = d.s
    if level == "fracSU->loopU":
        up = d.chern(1) - d.a * s
        down = d.fractional(1)
        loop_up = lo.z[0] - lo.afrak * s
        loop_down = lo.zfrac[0]
    elif level == "fracU6->loopSU":
        up = d.chern(2) - d.a * d.a * Fraction(s * (d.n - 1), 2 * d.l)
        down = d.fractional(2)
        loop_up = lo.z[1] + lo.z[0] * lo.c[0] * Fraction(1, d.n)
        loop_down = lo.zfrac[1]
    else:
        raise PreconditionError(f"unknown transgression level {level!r}")
    nu_up = free_suspend(lo.nu_y, up)
    nu_down = free_suspend(lo.nu_m, down)
    subs_y = RingMorphism.substitution(lo.ring_ly, lo.side_conditions_y)
    subs_m = RingMorphism.substitution(lo.ring_lm, lo.side_conditions_m)
    up_equal = subs_y(nu_up) == subs_y(loop_up)
    down_equal = subs_m(nu_down) == subs_m(loop_down)
    return TransgressionReport(level, nu_up, loop_up, nu_down, loop_down, up_equal, down_equal)


__all__ = [
    "LEVELS",
    "MORPHISM_NAMES",
    "SPACE_NAMES",
    "space_ring",
    "phi_pullback",
    "phi2_pullback",
    "xi2_pullback",
    "lphi2_z2",
    "MorphismTable",
    "builtin_morphism",
    "AbelianGroupDesc",
    "count_structures",
    "BundleDescriptor",
    "LoopData",
    "descriptor_from_json",
    "load_descriptor",
    "ObstructionPair",
    "obstruction",
    "IdentityCheck",
    "lift_consequences",
    "TransgressionReport",
    "transgress_obstruction",
]
