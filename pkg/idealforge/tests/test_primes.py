"""
Test candidate prime construction, enumeration and the count formula
"""
import pytest

from idealforge.errors import FamilyError
from idealforge.family.generators import FamilyParams
from idealforge.family.primes import (ALL_SUBSETS, NONEMPTY_SUBSETS, build_prime, count_primes_formula,
                                      count_primes_listed, enumerate_primes)
from idealforge.ideals import PrimeStatus, is_prime_structural
from idealforge.scalars import rationals


class TestCounts:
    """Closed-form counts"""

    def test_subsets(self):
        assert len(ALL_SUBSETS) == 16
        assert len(NONEMPTY_SUBSETS) == 15

    def test_two_levels(self):
        for d in (2, 3, 5):
            assert count_primes_formula(FamilyParams(2, d)) == 21 + d
            assert count_primes_listed(FamilyParams(2, d)) == 21 + d

    def test_formula_values(self):
        assert count_primes_formula(FamilyParams(3, 2)) == 289
        assert count_primes_formula(FamilyParams(4, 2)) == 807

    def test_formula_matches_listed_families(self):
        for n, d in [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)]:
            params = FamilyParams(n, d)
            assert count_primes_formula(params) == count_primes_listed(params)


class TestBuildPrime:

    def setup_method(self):
        self.params = FamilyParams(2, 2)

    def test_label(self):
        candidate = build_prime('Q1', self.params, lam=[2, 1])
        assert candidate.label == "Q1[L=12]"
        assert candidate.to_dict()['lambda'] == [1, 2]
        assert build_prime('Q1', self.params, lam=[]).label == "Q1[L=-]"

    def test_parameter_validation(self):
        with pytest.raises(FamilyError):
            build_prime('Q4', self.params, lam=[1])
        with pytest.raises(FamilyError):
            build_prime('Q7', FamilyParams(3, 2), lam=[])
        with pytest.raises(FamilyError):
            build_prime('Q2', self.params, lam=[1])
        with pytest.raises(FamilyError):
            build_prime('Q1', self.params, lam=[5])
        with pytest.raises(FamilyError):
            build_prime('Q20', FamilyParams(3, 2))
        with pytest.raises(FamilyError):
            build_prime('Q21', self.params)

    def test_roots_of_unity(self):
        field = rationals(2)
        assert build_prime('Q19', self.params, field, t=2, alpha=-1).alpha.value == -1
        with pytest.raises(FamilyError):
            build_prime('Q19', self.params, field, t=2, alpha=-1, beta=-1)
        with pytest.raises(FamilyError):
            build_prime('Q8', FamilyParams(3, 2), field, lam=[1], alpha=2)
        with pytest.raises(FamilyError):
            build_prime('Q17', self.params, field)

    def test_structurally_prime(self):
        for family_id, kwargs in [('Q1', {'lam': [1, 2]}), ('Q2', {}), ('Q3', {}), ('Q20', {})]:
            candidate = build_prime(family_id, self.params, **kwargs)
            assert is_prime_structural(candidate.ideal).status is PrimeStatus.PRIME


class TestEnumeration:

    def test_two_levels(self):
        enumeration = enumerate_primes(FamilyParams(2, 2))
        assert enumeration.raw_count == 23
        assert 0 < len(enumeration) <= 23
        assert not enumeration.notices
        labels = [c.label for c in enumeration.candidates]
        assert len(labels) == len(set(labels))

    def test_without_dedup(self):
        enumeration = enumerate_primes(FamilyParams(2, 2), dedup=False)
        assert len(enumeration) == enumeration.raw_count == 23

    def test_missing_roots_are_reported(self):
        enumeration = enumerate_primes(FamilyParams(2, 3), rationals(2), dedup=False)
        assert enumeration.raw_count == 21
        assert len(enumeration.notices) == 1
        assert "Q19" in enumeration.notices[0]

    def test_to_dict(self):
        data = enumerate_primes(FamilyParams(2, 2), dedup=False).to_dict()
        assert data['params'] == {'n': 2, 'd': 2}
        assert data['raw_count'] == 23
        assert len(data['candidates']) == 23
