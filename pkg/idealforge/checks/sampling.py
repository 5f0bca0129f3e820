"""
Seeded random polynomials and ideals for the property checks
"""
from typing import List, Optional, Sequence

import numpy as np

from ..ideals import Ideal
from ..oracle import monomials_up_to
from ..poly import Polynomial, Ring
from ..scalars import Field, rationals

SAMPLE_VARIABLES = ('x', 'y', 'z')


def sample_ring(field: Optional[Field] = None) -> Ring:
    return Ring.custom(SAMPLE_VARIABLES, field or rationals())


def random_poly(rng: np.random.Generator, ring: Ring, max_degree: int = 2, density: float = 0.5,
                homogeneous: bool = False, bound: int = 2) -> Polynomial:
    """
    Nonzero polynomial with integer coefficients in [-bound, bound].

    Homogeneous polynomials use a degree drawn from 1..max_degree.
    """
    if homogeneous:
        degree = int(rng.integers(1, max_degree + 1))
        monomials = [m for m in monomials_up_to(ring.ngens, degree) if sum(m) == degree]
    else:
        monomials = monomials_up_to(ring.ngens, max_degree)
    while True:
        terms = {}
        for m in monomials:
            if rng.random() < density:
                value = int(rng.integers(-bound, bound + 1))
                if value:
                    terms[m] = ring.field.convert(value)
        f = Polynomial(ring, terms)
        if not f.is_zero():
            return f


def random_generators(rng: np.random.Generator, ring: Ring, max_gens: int = 3, max_degree: int = 2,
                      homogeneous: bool = False) -> List[Polynomial]:
    count = int(rng.integers(1, max_gens + 1))
    return [random_poly(rng, ring, max_degree, homogeneous=homogeneous) for _ in range(count)]


def random_ideal(rng: np.random.Generator, ring: Ring, max_gens: int = 3, max_degree: int = 2,
                 homogeneous: bool = False) -> Ideal:
    return Ideal(ring, random_generators(rng, ring, max_gens, max_degree, homogeneous))


def random_subideal(rng: np.random.Generator, outer: Ideal, max_gens: int = 3) -> Ideal:
    """An ideal inside `outer`: multiples of its generators by random linear forms"""
    gens: Sequence[Polynomial] = outer.generators
    count = int(rng.integers(1, max_gens + 1))
    picked = []
    for _ in range(count):
        g = gens[int(rng.integers(0, len(gens)))]
        picked.append(random_poly(rng, outer.ring, 1) * g)
    return Ideal(outer.ring, picked)
