import random

import pytest

from fracchern.gcring import RingPresentation


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_polynomial(ring: RingPresentation, rng, terms=6, max_coef=9):
    """Random element in normal form (may be zero)."""
    out = ring.zero()
    names = [g.name for g in ring.generators]
    for _ in range(terms):
        mono = ring.one()
        budget = ring.degree_cap
        for _ in range(rng.randint(0, 3)):
            name = rng.choice(names)
            g = ring.generators[ring.index[name]]
            if g.degree > budget:
                continue
            candidate = mono * ring.gen(name)
            if candidate.is_zero:
                continue
            mono = candidate
            budget -= g.degree
        coef = rng.randint(-max_coef, max_coef)
        out = out + mono * coef
    return out
