"""Free suspension (transgression) as a degree -1 derivation.

A :class:`DerivationTable` records nu on even ring generators; Leibniz
extends it to polynomials in those generators:

    nu(x y) = nu(x) y + (-1)^{|x|} nu(y) x

with the target-side copies of x, y given by the identity-on-names
embedding.  nu is only defined on polynomials in even generators: every
use in the towers applies it to c-type classes, and extending to odd
arguments would need a sign convention the tables never exercise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import spaces
from .errors import PreconditionError
from .gcring import GradedPolynomial, RingMorphism, RingPresentation


@dataclass
class DerivationTable:
    """nu on generators: each even source generator may map to an
    odd target class one degree lower."""

    source: RingPresentation
    target: RingPresentation
    values: dict

    def __post_init__(self):
        checked = {}
        for name, value in self.values.items():
            if name not in self.source.index:
                raise PreconditionError(f"unknown source generator {name!r}")
            gen = self.source.generators[self.source.index[name]]
            if gen.is_odd:
                raise PreconditionError(
                    f"odd generator {name} cannot carry a transgression value"
                )
            if isinstance(value, str):
                value = self.target.poly(value)
            if value.ring != self.target:
                raise PreconditionError(f"value of {name} is not over the target ring")
            if not value.is_zero and not value.is_homogeneous(gen.degree - 1):
                raise PreconditionError(
                    f"value of {name} must be homogeneous of degree {gen.degree - 1}"
                )
            checked[name] = value
        self.values = checked


def free_suspend(table: DerivationTable, p: GradedPolynomial) -> GradedPolynomial:
    """Leibniz extension of the generator table; linear, kills constants."""
    if p.ring != table.source:
        raise PreconditionError("polynomial is not over the table's source ring")
    source = table.source
    target = table.target
    out = target.zero()
    for exps, coef in p.terms():
        used = [(i, e) for i, e in enumerate(exps) if e]
        for i, _ in used:
            gen = source.generators[i]
            if gen.is_odd:
                raise PreconditionError(
                    f"free suspension is undefined on odd generator {gen.name}"
                )
            if gen.name not in table.values:
                raise PreconditionError(
                    f"no transgression value for generator {gen.name}"
                )
        for i, e in used:
            cof_exps = [0] * len(target.generators)
            for j, ej in used:
                remaining = ej - (1 if j == i else 0)
                if not remaining:
                    continue
                name = source.names[j]
                idx = target.index.get(name)
                if idx is None:
                    raise PreconditionError(
                        f"generator {name} has no namesake in the target ring"
                    )
                cof_exps[idx] = remaining
            cofactor = target.from_exponents({tuple(cof_exps): coef * e})
            out = out + table.values[source.names[i]] * cofactor
    return out


def builtin_table(space_name: str, n: int | None = None, l: int | None = None, degree_cap: int = 12) -> DerivationTable:
    """Transgression tables of the classifying spaces used by the towers."""
    if space_name == "BUn":
        src = spaces.space_ring("BUn", n=n, degree_cap=degree_cap)
        tgt = spaces.space_ring("BLUn", degree_cap=degree_cap)
        values = {"c1": tgt.gen("z1")}
        if n >= 2:
            values["c2"] = tgt.poly("z2 + z1*c1")
        return DerivationTable(src, tgt, values)
    if space_name == "BUn_l":
        src = spaces.space_ring("BUn_l", n=n, l=l, degree_cap=degree_cap)
        tgt = spaces.space_ring("BLUn_l", n=n, l=l, degree_cap=degree_cap)
        s = n // l
        values = {"cb1": tgt.gen("zb1")}
        if n >= 2:
            values["c2"] = tgt.poly(f"z2 + {s * s}*zb1*cb1")
        return DerivationTable(src, tgt, values)
    if space_name == "BSpinc":
        src = spaces.space_ring("BSpinc", degree_cap=degree_cap)
        tgt = spaces.space_ring("BLSpinc", degree_cap=degree_cap)
        return DerivationTable(src, tgt, {"t": tgt.gen("sp1"), "q1": tgt.poly("mu - sp1*t")})
    if space_name == "BU1":
        src = spaces.space_ring("BU1", degree_cap=degree_cap)
        tgt = spaces.space_ring("BLU1", degree_cap=degree_cap)
        return DerivationTable(src, tgt, {"g": tgt.gen("h")})
    if space_name == "BU1xBUn":
        src = spaces.space_ring("BU1xBUn", n=n, degree_cap=degree_cap)
        tgt = spaces.space_ring("BLU1xBLUn", degree_cap=degree_cap)
        values = {"g": tgt.gen("h"), "c1": tgt.gen("z1")}
        if n >= 2:
            values["c2"] = tgt.poly("z2 + z1*c1")
        return DerivationTable(src, tgt, values)
    raise PreconditionError(f"no builtin transgression table for {space_name!r}")


@dataclass
class NaturalityReport:
    ok: bool
    generator_results: dict
    samples_checked: int = 0
    failures: list = field(default_factory=list)

    def __str__(self):
        lines = [f"naturality: {'ok' if self.ok else 'FAILED'}"]
        for name, good in self.generator_results.items():
            lines.append(f"  {name}: {'ok' if good else 'MISMATCH'}")
        lines.append(f"  random monomials checked: {self.samples_checked}")
        lines.extend(f"  {msg}" for msg in self.failures)
        return "\n".join(lines)


def _random_even_monomial(rng, table: DerivationTable):
    """A random product of valued generators staying under the degree cap."""
    names = sorted(table.values.keys())
    cap = min(table.source.degree_cap, table.target.degree_cap + 1)
    poly = table.source.one()
    degree = 0
    for _ in range(rng.randint(1, 3)):
        name = rng.choice(names)
        gen_degree = table.source.degrees[table.source.index[name]]
        if degree + gen_degree > cap:
            break
        poly = poly * table.source.gen(name)
        degree += gen_degree
    return poly


def naturality_check(
    f: RingMorphism,
    Lf: RingMorphism,
    nu_src: DerivationTable,
    nu_tgt: DerivationTable,
    samples: int = 20,
    seed: int = 0,
) -> NaturalityReport:
    """Check nu_tgt(f(x)) == Lf(nu_src(x)) on generators and random monomials."""
    if f.source != nu_src.source or f.target != nu_tgt.source:
        raise PreconditionError("morphism f is not compatible with the tables")
    if Lf.source != nu_src.target or Lf.target != nu_tgt.target:
        raise PreconditionError("morphism Lf is not compatible with the tables")
    results = {}
    failures = []
    for name in nu_src.values:
        x = f.source.gen(name)
        lhs = free_suspend(nu_tgt, f(x))
        rhs = Lf(free_suspend(nu_src, x))
        results[name] = lhs == rhs
        if not results[name]:
            failures.append(f"generator {name}: {lhs} != {rhs}")
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        x = _random_even_monomial(rng, nu_src)
        try:
            lhs = free_suspend(nu_tgt, f(x))
            rhs = Lf(free_suspend(nu_src, x))
        except PreconditionError:
            continue
        checked += 1
        if lhs != rhs:
            failures.append(f"monomial {x}: {lhs} != {rhs}")
    ok = all(results.values()) and not failures
    return NaturalityReport(ok, results, checked, failures)
