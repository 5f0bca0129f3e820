"""
Candidate associated primes of K(n, d)

Every enumerated candidate must pass the structural primality test. Whether
K(n, d) lies in a candidate is recorded for all of them and asserted for the
minimal ones (Q1 with a non-empty index set, and Q2). Q3 is claimed to be
associated; a colon witness K : h = Q3 is searched over small products of
variables outside Q3.
"""
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Tuple

from ..family.generators import FamilyBuilder, family_builder
from ..family.primes import PrimeBuilder, PrimeCandidate, enumerate_builder
from ..ideals import Ideal, PrimeStatus, ideal_contains_witness, ideal_equal, ideal_quotient, is_prime_structural
from ..poly import Polynomial, format_poly
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus

MINIMAL_FAMILIES = ('Q1', 'Q2')


def _product(factors: Tuple[Polynomial, ...]) -> Polynomial:
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


def find_colon_witness(K: Ideal, P: Ideal, pool: List[Polynomial], max_factors: int = 3,
                       max_attempts: Optional[int] = None) -> Optional[Tuple[Polynomial, ...]]:
    """
    Factors of some h with K : h = P, h a product of at most max_factors
    pool elements, or None.

    P ⊆ K : h is tested first from K's basis alone; only survivors pay for
    the colon computation.
    """
    gb = K.groebner_basis()
    attempts = 0
    for size in range(1, max_factors + 1):
        for factors in combinations_with_replacement(pool, size):
            if max_attempts is not None and attempts >= max_attempts:
                return None
            attempts += 1
            h = _product(factors)
            if P.contains(h):
                continue
            if not all(gb.contains(g * h) for g in P.generators):
                continue
            if ideal_equal(ideal_quotient(K, list(factors)), P):
                return factors
    return None


def q3_pool(fam: FamilyBuilder, Q3: Ideal) -> List[Polynomial]:
    """Level 0 and 1 variables outside Q3"""
    names = [f"b0{i}" for i in range(1, 5)] + [f"b1{i}" for i in range(1, 5)] + [f"c1{i}" for i in range(1, 5)]
    return [fam.ring.var(v) for v in names if not Q3.contains(fam.ring.var(v))]


class PrimeListCheck(BaseCheck):
    """Primality of every candidate, containment of K in the minimal ones, a witness for Q3"""

    kind = CheckKind.PRIME_LIST

    def get_id(self) -> str:
        return 'prime-list'

    def get_description(self) -> str:
        return "Candidate associated primes: primality, containment of K, colon witness for Q3"

    def get_parameters(self) -> Dict[str, Any]:
        return {
            'witness_factors': {'default': 3, 'type': int, 'min': 1,
                                'description': 'Largest number of factors in a Q3 colon witness'},
        }

    def evaluate(self, context: CheckContext) -> CheckReport:
        fam = family_builder(context.params, context.field)
        K = fam.K()
        enumeration = enumerate_builder(fam)
        notes: List[str] = list(enumeration.notices)

        containing = 0
        for candidate in enumeration.candidates:
            verdict = is_prime_structural(candidate.ideal)
            if verdict.status is not PrimeStatus.PRIME:
                return self.report(context, CheckStatus.FAIL,
                                   {'candidate': candidate.label, 'primality': verdict.to_dict()},
                                   notes + [f"{candidate.label} is {verdict.status.value}: {verdict.reason}"])
            witness = ideal_contains_witness(candidate.ideal, K)
            if witness is None:
                containing += 1
            elif candidate.depth == 0 and candidate.family_id in MINIMAL_FAMILIES and _is_minimal(candidate):
                return self.report(context, CheckStatus.FAIL, {'candidate': candidate.label, **witness.to_dict()},
                                   notes + [f"K is not contained in {candidate.label}"])
        notes.append(f"{len(enumeration)} candidates ({enumeration.raw_count} before duplicate removal), all prime")
        notes.append(f"K contained in {containing} of {len(enumeration)}")

        Q3 = PrimeBuilder(fam).build('Q3').ideal
        factors = find_colon_witness(K, Q3, q3_pool(fam, Q3), self.get_parameter('witness_factors'))
        if factors is None:
            notes.append("Q3: no colon witness found among small products (skipped)")
        else:
            notes.append(f"Q3: K : {'*'.join(format_poly(f) for f in factors)} = Q3")
        return self.report(context, CheckStatus.PASS, notes=notes)


def _is_minimal(candidate: PrimeCandidate) -> bool:
    """Q1 with a non-empty index set, or Q2"""
    return candidate.family_id == 'Q2' or bool(candidate.lam)
