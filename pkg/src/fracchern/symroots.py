"""Chern-root workspace: splitting principle and fractional Chern classes.

A :class:`RootModel` carries n degree-2 roots x1..xn, a degree-2 twist
class ``a`` and optional extra even parameters.  Shifting every root by
-a/l produces the fractional classes: the degree-2k part of
prod_i (1 + x_i - a/l) is the pullback of the k-th fractional Chern
class, and rewriting it in the elementary symmetric basis must agree
with the closed form

    sum_{i=0..k} (-1/l)^i C(n-k+i, i) a^i e_{k-i}.

That agreement (closed vs brute force) is the module's central oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import EngineError, PreconditionError, SymmetryError
from .gcring import GradedPolynomial, RingMorphism, RingPresentation


class RootModel:
    """Splitting-principle workspace for rank n and twist order l (l | n)."""

    def __init__(self, n: int, l: int, degree_cap: int | None = None, extra_even=()):
        if n < 1 or l < 1:
            raise PreconditionError("n and l must be positive")
        if n % l:
            raise PreconditionError(f"l={l} must divide n={n}")
        if degree_cap is None:
            degree_cap = max(2 * n, 12)
        self.n = n
        self.l = l
        self.s = n // l
        self.extra_even = tuple(extra_even)
        gens = [("a", 2)] + [(name, 2) for name in self.extra_even]
        gens += [(f"x{i}", 2) for i in range(1, n + 1)]
        self.ring = RingPresentation(gens, degree_cap)
        e_gens = [("a", 2)] + [(name, 2) for name in self.extra_even]
        e_gens += [(f"e{k}", 2 * k) for k in range(1, n + 1)]
        self.e_ring = RingPresentation(e_gens, degree_cap)
        self.root_indices = tuple(self.ring.index[f"x{i}"] for i in range(1, n + 1))
        self.param_indices = tuple(
            i for i in range(len(self.ring.generators)) if i not in self.root_indices
        )
        self._sigma_cache: dict[int, GradedPolynomial] = {}
        self._sigma_power_cache: dict[tuple, GradedPolynomial] = {}

    def root(self, i: int) -> GradedPolynomial:
        return self.ring.gen(f"x{i}")

    def roots(self):
        return [self.root(i) for i in range(1, self.n + 1)]

    def shifted_roots(self):
        """The fractional Chern roots x_i - a/l."""
        shift = self.ring.gen("a") * Fraction(-1, self.l)
        return [r + shift for r in self.roots()]

    def elementary_to_roots(self) -> RingMorphism:
        """e_k -> sigma_k(x); parameters map to their namesakes."""
        images = {"a": self.ring.gen("a")}
        for name in self.extra_even:
            images[name] = self.ring.gen(name)
        for k in range(1, self.n + 1):
            images[f"e{k}"] = elementary_symmetric(k, self)
        return RingMorphism(self.e_ring, self.ring, images)


def _esp(values, k_max, ring):
    """Elementary symmetric polynomials e_0..e_k_max of ring elements."""
    table = [ring.one()] + [ring.zero()] * k_max
    for v in values:
        for j in range(min(len(table) - 1, k_max), 0, -1):
            table[j] = table[j] + v * table[j - 1]
    return table


def elementary_symmetric(k: int, model: RootModel) -> GradedPolynomial:
    """sigma_k(x_1..x_n); sigma_0 = 1."""
    if not 0 <= k <= model.n:
        raise PreconditionError(f"k={k} out of range 0..{model.n}")
    if k not in model._sigma_cache:
        table = _esp(model.roots(), model.n, model.ring)
        for j, poly in enumerate(table):
            model._sigma_cache[j] = poly
    return model._sigma_cache[k]


def shifted_total_chern(model: RootModel) -> GradedPolynomial:
    """Full product prod_i (1 + x_i - a/l), expanded and truncated."""
    if model.ring.degree_cap < 2 * model.n:
        raise PreconditionError("degree_cap must be at least 2n for the full product")
    out = model.ring.one()
    for r in model.shifted_roots():
        out = out * (model.ring.one() + r)
    return out


def find_asymmetry(p: GradedPolynomial, model: RootModel):
    """Return the first adjacent root transposition not fixing p, or None."""
    for i in range(1, model.n):
        swap = RingMorphism.rename(
            model.ring, model.ring, {f"x{i}": f"x{i+1}", f"x{i+1}": f"x{i}"}
        )
        if swap(p) != p:
            return (f"x{i}", f"x{i+1}")
    return None


def is_symmetric(p: GradedPolynomial, model: RootModel) -> bool:
    return find_asymmetry(p, model) is None


def _sigma_power_product(model: RootModel, multiplicities: tuple) -> GradedPolynomial:
    """prod_k sigma_k^{m_k} with caching (multiplicities indexed from 1)."""
    cached = model._sigma_power_cache.get(multiplicities)
    if cached is not None:
        return cached
    out = model.ring.one()
    for k, m in enumerate(multiplicities, start=1):
        if m:
            out = out * elementary_symmetric(k, model) ** m
    model._sigma_power_cache[multiplicities] = out
    return out


def express_in_elementary(p: GradedPolynomial, model: RootModel) -> GradedPolynomial:
    """Rewrite a root-symmetric polynomial in e_1..e_n and the parameters.

    Classical leading-monomial elimination: for symmetric input the lex
    leading root exponents form a partition lambda, and subtracting
    coeff * prod_k sigma_k^(lambda_k - lambda_{k+1}) strictly lowers the
    leading monomial.  Substituting e_k -> sigma_k in the result
    reproduces the input exactly.
    """
    if p.ring != model.ring:
        raise PreconditionError("polynomial is not over the model's root ring")
    violation = find_asymmetry(p, model)
    if violation is not None:
        raise SymmetryError(
            f"input is not symmetric: transposition {violation[0]} <-> {violation[1]} changes it",
            transposition=violation,
        )
    n = model.n
    ring = model.ring
    e_ring = model.e_ring

    # split into slices by parameter monomial (a and extras)
    slices: dict[tuple, dict] = {}
    for exps, coef in p.terms():
        param = tuple(exps[i] for i in model.param_indices)
        roots_only = list(exps)
        for i in model.param_indices:
            roots_only[i] = 0
        slices.setdefault(param, {})[tuple(roots_only)] = coef

    out = e_ring.zero()
    for param, root_terms in sorted(slices.items()):
        work = ring.from_exponents(root_terms)
        guard = 0
        while not work.is_zero:
            guard += 1
            if guard > 100000:
                raise EngineError("elementary-basis reduction did not terminate")
            lam, lead_coef = max(
                (
                    (tuple(exps[i] for i in model.root_indices), coef)
                    for exps, coef in work.terms()
                ),
                key=lambda t: t[0],
            )
            if any(lam[i] < lam[i + 1] for i in range(n - 1)):
                raise EngineError(
                    "nonzero remainder in symmetric reduction (internal error)"
                )
            mult = tuple(
                lam[k] - (lam[k + 1] if k + 1 < n else 0) for k in range(n)
            )
            work = work - _sigma_power_product(model, mult) * lead_coef
            # both presentations reserve the same leading slots for a / extras
            e_exps = [0] * len(e_ring.generators)
            for j, pe in zip(model.param_indices, param):
                e_exps[j] = pe
            for k, m in enumerate(mult, start=1):
                e_exps[e_ring.index[f"e{k}"]] = m
            out = out + e_ring.from_exponents({tuple(e_exps): lead_coef})
    return out


def fractional_chern_closed(model: RootModel, k: int) -> GradedPolynomial:
    """Closed form sum_{i=0..k} (-1/l)^i C(n-k+i, i) a^i e_{k-i} (e_0 = 1)."""
    n, l = model.n, model.l
    if not 0 <= k <= n:
        raise PreconditionError(f"k={k} out of range 0..{n}")
    e_ring = model.e_ring
    out = e_ring.zero()
    a_idx = e_ring.index["a"]
    for i in range(k + 1):
        coef = Fraction(-1, l) ** i * comb(n - k + i, i)
        exps = [0] * len(e_ring.generators)
        exps[a_idx] = i
        if k - i >= 1:
            exps[e_ring.index[f"e{k - i}"]] = 1
        out = out + e_ring.from_exponents({tuple(exps): coef})
    return out


def fractional_chern_brute(model: RootModel, k: int) -> GradedPolynomial:
    """Independent oracle: degree-2k part of the expanded shifted product,
    rewritten in the elementary basis."""
    if not 0 <= k <= model.n:
        raise PreconditionError(f"k={k} out of range 0..{model.n}")
    if model.ring.degree_cap < 2 * k:
        raise PreconditionError("degree_cap must be at least 2k")
    part = shifted_total_chern(model).homogeneous_part(2 * k)
    return express_in_elementary(part, model)


def change_trivialization_ring(model: RootModel) -> RingPresentation:
    """Presentation in the fractional classes f_1..f_n and the shift x."""
    gens = [("x", 2)] + [(f"f{k}", 2 * k) for k in range(1, model.n + 1)]
    return RingPresentation(gens, model.ring.degree_cap)


def change_trivialization(model: RootModel, k: int) -> GradedPolynomial:
    """Fractional classes after moving the trivialization by x:
    sum_{i=0..k} (-1/l)^i C(n-k+i, i) x^i f_{k-i} (f_0 = 1)."""
    n, l = model.n, model.l
    if not 0 <= k <= n:
        raise PreconditionError(f"k={k} out of range 0..{n}")
    ring = change_trivialization_ring(model)
    out = ring.zero()
    x_idx = ring.index["x"]
    for i in range(k + 1):
        coef = Fraction(-1, l) ** i * comb(n - k + i, i)
        exps = [0] * len(ring.generators)
        exps[x_idx] = i
        if k - i >= 1:
            exps[ring.index[f"f{k - i}"]] = 1
        out = out + ring.from_exponents({tuple(exps): coef})
    return out


@dataclass
class SplittingReport:
    ok: bool
    residuals: list

    def __str__(self):
        status = "ok" if self.ok else "FAILED"
        lines = [f"splitting relation: {status}"]
        for j, res in enumerate(self.residuals, start=1):
            lines.append(f"  root {j}: residual {res}")
        return "\n".join(lines)


def splitting_check(model: RootModel) -> SplittingReport:
    """Each shifted root solves the fractional characteristic relation:

        sum_{k=0..n} (-1)^k sigma_k(x - a/l) (x_j - a/l)^{n-k} == 0
    """
    if model.ring.degree_cap < 2 * model.n:
        raise PreconditionError("degree_cap must be at least 2n")
    shifted = model.shifted_roots()
    sigma = _esp(shifted, model.n, model.ring)
    residuals = []
    for r in shifted:
        total = model.ring.zero()
        for k in range(model.n + 1):
            total = total + sigma[k] * r ** (model.n - k) * ((-1) ** k)
        residuals.append(total)
    return SplittingReport(all(res.is_zero for res in residuals), residuals)
