"""
Test the prime-list helpers and the membership check
"""
import pytest

from idealforge.checks import membership_check
from idealforge.checks.base_check import CheckContext, CheckStatus
from idealforge.checks.membership_check import MembershipCheck
from idealforge.checks.prime_list_check import find_colon_witness
from idealforge.family.generators import eval_map
from idealforge.ideals import Ideal
from idealforge.poly import Ring


class TestColonWitness:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y', 'z'])

    def test_found(self):
        K = Ideal.from_texts(self.ring, ["x*y", "x*z"])
        P = Ideal.from_texts(self.ring, ["x"])
        factors = find_colon_witness(K, P, [self.ring.var('y')], max_factors=2)
        assert factors == (self.ring.var('y'),)

    def test_not_found(self):
        K = Ideal.from_texts(self.ring, ["x*y"])
        P = Ideal.from_texts(self.ring, ["z"])
        assert find_colon_witness(K, P, [self.ring.var('y')], max_factors=2) is None
        assert find_colon_witness(K, P, [self.ring.var('y')], max_attempts=0) is None


class TestMembershipEvaluation:

    def test_evaluation_mismatch_fails(self, monkeypatch):
        def shifted(f, params):
            return eval_map(f, params) + 1

        monkeypatch.setattr(membership_check, 'eval_map', shifted)
        report = MembershipCheck().run(CheckContext.create(2, 2))
        assert report.status is CheckStatus.FAIL
        assert report.witness['side'] == 'eval'
        assert report.witness['normal_form'] == "1"
        assert report.notes == ["evaluated s_n - f_n differs from the displayed short element"]


@pytest.mark.integration
class TestFamilyChecks:
    """Full-family Gröbner work at the smallest parameters"""

    def test_membership_two_levels(self):
        report = MembershipCheck().run(CheckContext.create(2, 2))
        assert report.status is CheckStatus.PASS
        assert report.max_coeff_degree is not None

    def test_membership_without_certificate(self):
        report = MembershipCheck({'track_certificate': False}).run(CheckContext.create(2, 2))
        assert report.status is CheckStatus.PASS
        assert report.max_coeff_degree is None
