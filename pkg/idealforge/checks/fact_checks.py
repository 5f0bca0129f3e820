"""
Randomized checks of the ideal identities the decomposition leans on

    modular law        (I + I') ∩ I'' = I + (I' ∩ I'')   when I ⊆ I''
    principal meet     (x) ∩ I = x (I : x)
    colon of a sum     (I + x I') : x = (I : x) + I'

Instances are random ideals in Q[x, y, z] with at most three generators of
degree at most 2 and coefficients in {-2..2}, drawn from a seeded numpy
generator so a run is reproducible.
"""
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import config
from ..errors import UnknownCheckError
from ..ideals import (Ideal, Witness, ideal_equal_witness, ideal_intersect, ideal_product, ideal_sum,
                      principal, quotient_by_poly)
from ..poly import format_poly
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus
from .sampling import random_ideal, random_poly, random_subideal, sample_ring

# (left, right, instance description)
Trial = Tuple[Ideal, Ideal, Dict[str, Any]]


def _describe(I: Ideal) -> List[str]:
    return [format_poly(g) for g in I.generators]


def modular_law_trial(rng: np.random.Generator) -> Trial:
    ring = sample_ring()
    outer = random_ideal(rng, ring)
    inner = random_subideal(rng, outer)
    other = random_ideal(rng, ring)
    left = ideal_intersect(ideal_sum(inner, other), outer)
    right = ideal_sum(inner, ideal_intersect(other, outer))
    return left, right, {'I': _describe(inner), "I'": _describe(other), "I''": _describe(outer)}


def principal_meet_trial(rng: np.random.Generator) -> Trial:
    ring = sample_ring()
    x = random_poly(rng, ring)
    I = random_ideal(rng, ring)
    left = ideal_intersect(principal(x), I)
    right = ideal_product(principal(x), quotient_by_poly(I, x))
    return left, right, {'x': format_poly(x), 'I': _describe(I)}


def colon_of_sum_trial(rng: np.random.Generator) -> Trial:
    ring = sample_ring()
    x = random_poly(rng, ring)
    I = random_ideal(rng, ring)
    other = random_ideal(rng, ring)
    left = quotient_by_poly(ideal_sum(I, ideal_product(principal(x), other)), x)
    right = ideal_sum(quotient_by_poly(I, x), other)
    return left, right, {'x': format_poly(x), 'I': _describe(I), "I'": _describe(other)}


FACTS: Dict[str, Tuple[str, Callable[[np.random.Generator], Trial]]] = {
    'fact-modular-law': ("(I + I') ∩ I'' = I + (I' ∩ I'') for I ⊆ I''", modular_law_trial),
    'fact-principal-meet': ("(x) ∩ I = x (I : x)", principal_meet_trial),
    'fact-colon-of-sum': ("(I + x I') : x = (I : x) + I'", colon_of_sum_trial),
}

# Short numeric ids accepted on the command line
FACT_ALIASES = {'0.1': 'fact-modular-law', '0.2': 'fact-principal-meet', '0.3': 'fact-colon-of-sum'}


def resolve_fact(fact_id: str) -> str:
    check_id = FACT_ALIASES.get(fact_id, fact_id)
    if check_id not in FACTS:
        raise UnknownCheckError(f"Unknown fact '{fact_id}'")
    return check_id


class FactCheck(BaseCheck):
    """Random trials of one identity; Pass iff every trial holds"""

    kind = CheckKind.FACT
    family_sized = False

    def __init__(self, fact_id: str, parameters: Optional[Dict[str, Any]] = None):
        self.fact_id = resolve_fact(fact_id)
        super().__init__(parameters)

    def get_id(self) -> str:
        return self.fact_id

    def get_description(self) -> str:
        return FACTS[self.fact_id][0]

    def get_parameters(self) -> Dict[str, Any]:
        return {
            'trials': {
                'default': config.fact_trials,
                'type': int,
                'min': 1,
                'description': 'Number of random instances',
            },
        }

    def evaluate(self, context: CheckContext) -> CheckReport:
        trials = self.get_parameter('trials')
        make_trial = FACTS[self.fact_id][1]
        rng = np.random.default_rng(context.seed)
        for index in range(trials):
            left, right, instance = make_trial(rng)
            witness: Optional[Witness] = ideal_equal_witness(left, right)
            if witness is not None:
                return self.report(context, CheckStatus.FAIL, {'trial': index, 'instance': instance,
                                                               **witness.to_dict()},
                                   [f"trial {index} of {trials} failed"])
        return self.report(context, CheckStatus.PASS, notes=[f"{trials} trials, seed {context.seed}"])


def fact_checks() -> List[FactCheck]:
    return [FactCheck(fact_id) for fact_id in FACTS]
