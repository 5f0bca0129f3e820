"""
Gröbner-backed ideal operations against the linear-algebra oracle

For homogeneous I the truncated span of degree D is exactly the part of I
of degree <= D, so intersection, colon and elimination can be compared with
pure linear algebra in both directions:

    computed ⊆ oracle   each computed generator of degree <= D lies in the
                        defining truncated spans
    oracle ⊆ computed   each basis vector of the oracle space lies in the
                        computed ideal
"""
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..config import config
from ..ideals import Ideal, eliminate, ideal_intersect, ideal_product, principal, quotient_by_poly
from ..oracle import monomial_poly, monomials_up_to, span_contains, span_intersection, truncated_span
from ..poly import Polynomial, format_poly
from ..scalars import prime_field
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus
from .sampling import random_ideal, random_poly, sample_ring

ORACLE_PRIME = 32003

# (operation, direction, offending polynomial) or None
Mismatch = Optional[Tuple[str, str, Polynomial]]


def _low(gens, degree: int) -> List[Polynomial]:
    return [g for g in gens if g.total_degree() <= degree]


def compare_intersection(I: Ideal, J: Ideal, degree: int) -> Mismatch:
    computed = ideal_intersect(I, J)
    span_i, span_j = truncated_span(I.generators, degree), truncated_span(J.generators, degree)
    for g in _low(computed.generators, degree):
        if not (span_contains(span_i, g) and span_contains(span_j, g)):
            return 'intersection', 'computed generator outside the oracle', g
    for v in span_intersection(span_i, span_j):
        if not computed.contains(v):
            return 'intersection', 'oracle element outside the computed ideal', v
    return None


def compare_quotient(I: Ideal, f: Polynomial, degree: int) -> Mismatch:
    computed = quotient_by_poly(I, f)
    span_i = truncated_span(I.generators, degree)
    for g in _low(computed.generators, degree - f.total_degree()):
        if not span_contains(span_i, g * f):
            return 'quotient', 'computed generator outside the oracle', g
    ring = I.ring
    multiples = [monomial_poly(ring, m) * f for m in monomials_up_to(ring.ngens, degree - f.total_degree())]
    # v = h f with h f in I; h in I : f iff v in (I : f) f
    scaled = ideal_product(computed, principal(f))
    for v in span_intersection(span_i, multiples):
        if not scaled.contains(v):
            return 'quotient', 'oracle element outside the computed ideal', v
    return None


def compare_elimination(I: Ideal, variable: str, degree: int) -> Mismatch:
    computed = eliminate(I, [variable])
    ring = I.ring
    span_i = truncated_span(I.generators, degree)
    for g in _low(computed.generators, degree):
        if not span_contains(span_i, g):
            return 'elimination', 'computed generator outside the oracle', g
    k = ring.index[variable]
    free = [monomial_poly(ring, m) for m in monomials_up_to(ring.ngens, degree) if m[k] == 0]
    for v in span_intersection(span_i, free):
        if not computed.contains(v):
            return 'elimination', 'oracle element outside the computed ideal', v
    return None


class OracleCheck(BaseCheck):
    """Intersection, colon and elimination on random homogeneous instances"""

    kind = CheckKind.ORACLE
    family_sized = False

    def get_id(self) -> str:
        return 'oracle'

    def get_description(self) -> str:
        return "Intersection, quotient and elimination agree with degree-bounded linear algebra"

    def get_parameters(self) -> Dict[str, Any]:
        return {
            'trials': {'default': config.oracle_trials, 'type': int, 'min': 1,
                       'description': 'Number of random instances'},
            'degree': {'default': config.oracle_degree, 'type': int, 'min': 2,
                       'description': 'Truncation degree of the oracle'},
        }

    def evaluate(self, context: CheckContext) -> CheckReport:
        trials = self.get_parameter('trials')
        degree = self.get_parameter('degree')
        rng = np.random.default_rng(context.seed)
        ring = sample_ring(prime_field(ORACLE_PRIME))
        for index in range(trials):
            I = random_ideal(rng, ring, max_gens=2, homogeneous=True)
            J = random_ideal(rng, ring, max_gens=2, homogeneous=True)
            f = random_poly(rng, ring, homogeneous=True)
            variable = ring.variables[int(rng.integers(0, ring.ngens))]
            mismatch = (compare_intersection(I, J, degree) or compare_quotient(I, f, degree)
                        or compare_elimination(I, variable, degree))
            if mismatch is not None:
                operation, direction, poly = mismatch
                return self.report(context, CheckStatus.FAIL, {
                    'trial': index, 'operation': operation, 'direction': direction,
                    'polynomial': format_poly(poly),
                    'I': [format_poly(g) for g in I.generators],
                }, [f"trial {index}: {operation} disagrees ({direction})"])
        return self.report(context, CheckStatus.PASS,
                           notes=[f"{trials} instances up to degree {degree} over F_{ORACLE_PRIME}"])
