"""
The K(n, d) family: generators, candidate primes and displayed ideals
"""
from .displays import (CHAINS, DisplayBuilder, DisplayChain, DisplayStep, Relation, display_builder,
                       emit_named, get_chain, list_names)
from .generators import (FamilyBuilder, FamilyParams, build_aux, build_K, build_Kl, build_shifted,
                         build_sublevels, eval_map, family_builder, family_ring)
from .primes import (PrimeBuilder, PrimeCandidate, PrimeEnumeration, build_prime, count_primes_formula,
                     count_primes_listed, enumerate_primes, lift_candidate)

__all__ = [
    'FamilyParams', 'FamilyBuilder', 'family_ring', 'family_builder',
    'build_Kl', 'build_K', 'eval_map', 'build_sublevels', 'build_shifted', 'build_aux',
    'PrimeBuilder', 'PrimeCandidate', 'PrimeEnumeration', 'build_prime', 'enumerate_primes', 'lift_candidate',
    'count_primes_formula', 'count_primes_listed',
    'DisplayBuilder', 'DisplayChain', 'DisplayStep', 'Relation', 'CHAINS', 'display_builder', 'get_chain',
    'list_names', 'emit_named',
]
