"""
Test the randomized identity checks
"""
import numpy as np
import pytest

from idealforge.checks.base_check import CheckContext, CheckKind, CheckStatus
from idealforge.checks.fact_checks import FACTS, FactCheck, principal_meet_trial, resolve_fact
from idealforge.checks.sampling import random_ideal, random_poly, random_subideal, sample_ring
from idealforge.errors import UnknownCheckError
from idealforge.ideals import ideal_contains, ideal_equal


class TestFactChecks:
    """A handful of trials per identity"""

    def setup_method(self):
        self.context = CheckContext.create(2, 2)

    @pytest.mark.parametrize("fact_id", sorted(FACTS))
    def test_identity_holds(self, fact_id):
        check = FactCheck(fact_id, {'trials': 3})
        report = check.run(self.context)
        assert check.kind is CheckKind.FACT
        assert report.status is CheckStatus.PASS
        assert report.notes == ["3 trials, seed 7"]

    @pytest.mark.slow
    @pytest.mark.parametrize("fact_id", sorted(FACTS))
    def test_identity_holds_at_full_size(self, fact_id):
        report = FactCheck(fact_id, {'trials': 200}).run(self.context)
        assert report.status is CheckStatus.PASS
        assert report.notes == ["200 trials, seed 7"]

    def test_runs_outside_family_budget(self):
        report = FactCheck('0.2', {'trials': 1}).run(CheckContext.create(5, 3))
        assert report.status is CheckStatus.PASS

    def test_resolve_fact(self):
        assert resolve_fact('0.2') == 'fact-principal-meet'
        assert resolve_fact('fact-modular-law') == 'fact-modular-law'
        with pytest.raises(UnknownCheckError):
            resolve_fact('0.9')

    def test_trials_are_reproducible(self):
        first = principal_meet_trial(np.random.default_rng(3))
        second = principal_meet_trial(np.random.default_rng(3))
        assert first[2] == second[2]
        assert ideal_equal(first[0], first[1])


class TestSampling:

    def setup_method(self):
        self.rng = np.random.default_rng(11)
        self.ring = sample_ring()

    def test_random_poly(self):
        for _ in range(10):
            f = random_poly(self.rng, self.ring)
            assert not f.is_zero()
            assert f.total_degree() <= 2

    def test_homogeneous(self):
        f = random_poly(self.rng, self.ring, max_degree=3, homogeneous=True)
        degrees = {sum(m) for m in f.terms}
        assert len(degrees) == 1

    def test_subideal(self):
        outer = random_ideal(self.rng, self.ring)
        inner = random_subideal(self.rng, outer)
        assert 1 <= len(inner) <= 3
        assert ideal_contains(outer, inner)
