"""
Test the run policy every check goes through
"""
import pytest

import idealforge.groebner as groebner_module
from idealforge.checks.base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus
from idealforge.checks.check_manager import check_manager
from idealforge.errors import BudgetExceeded
from idealforge.groebner import groebner
from idealforge.poly import Ring, parse_poly


class StubCheck(BaseCheck):
    """Check whose outcome is chosen by the test"""

    def __init__(self, outcome=CheckStatus.PASS, parameters=None):
        self.outcome = outcome
        super().__init__(parameters)

    def get_id(self) -> str:
        return 'stub'

    def get_description(self) -> str:
        return "Stub check"

    def get_parameters(self):
        return {'size': {'default': 3, 'type': int, 'min': 1, 'description': 'Size'}}

    def evaluate(self, context: CheckContext) -> CheckReport:
        if isinstance(self.outcome, Exception):
            raise self.outcome
        return self.report(context, self.outcome, notes=["stub ran"])


class TestRunPolicy:
    """Refusal, skipping and error conversion"""

    def setup_method(self):
        self.context = CheckContext.create(2, 2)

    def test_pass(self):
        report = StubCheck().run(self.context)
        assert report.status is CheckStatus.PASS
        assert report.notes == ["stub ran"]
        assert report.elapsed_ms >= 0

    def test_refused_outside_budget(self):
        report = StubCheck().run(CheckContext.create(5, 3))
        assert report.status is CheckStatus.REFUSED
        assert "--force" in report.notes[0]

    def test_force_overrides_budget(self):
        report = StubCheck().run(CheckContext.create(5, 3, force=True))
        assert report.status is CheckStatus.PASS

    def test_skipped_when_not_defined(self):
        check = check_manager.get_check('n2-chain')
        report = check.run(CheckContext.create(3, 2))
        assert report.status is CheckStatus.SKIPPED

    def test_exception_becomes_fail(self):
        report = StubCheck(RuntimeError("boom")).run(self.context)
        assert report.status is CheckStatus.FAIL
        assert report.failed
        assert report.witness == {'error': "RuntimeError: boom"}

    def test_budget_becomes_refused(self):
        report = StubCheck(BudgetExceeded("out of time")).run(self.context)
        assert report.status is CheckStatus.REFUSED
        assert report.notes == ["out of time"]


class TestParameters:

    def test_defaults_and_overrides(self):
        assert StubCheck().get_parameter('size') == 3
        assert StubCheck(parameters={'size': 5}).get_parameter('size') == 5

    def test_validation(self):
        with pytest.raises(ValueError):
            StubCheck(parameters={'size': 0})
        with pytest.raises(ValueError):
            StubCheck(parameters={'colour': 'red'})


class TestReport:

    def test_to_dict(self):
        report = StubCheck().run(CheckContext.create(2, 2, field_name='QQ'))
        data = report.to_dict()
        assert data['check_id'] == 'stub'
        assert data['params'] == {'n': 2, 'd': 2, 'field': report.field}
        assert data['status'] == "Pass"
        assert 'elapsed_ms' in data
        assert 'witness' not in data
        assert 'elapsed_ms' not in report.to_dict(timings=False)

    def test_kind_default(self):
        assert StubCheck().kind is CheckKind.IDENTITY
        assert str(StubCheck()) == "stub: Stub check"


class RepeatedGroebnerCheck(StubCheck):
    """Runs several short Gröbner computations, moving a fake clock between them"""

    def __init__(self, now, step):
        self.now = now
        self.step = step
        super().__init__()

    def evaluate(self, context: CheckContext) -> CheckReport:
        ring = Ring.custom(['x', 'y'])
        gens = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        for _ in range(3):
            groebner(gens)
            self.now[0] += self.step
        return self.report(context, CheckStatus.PASS)


class TestTimeCap:
    """The time cap applies to each Gröbner computation, not to the check"""

    def test_many_runs_under_cap_pass(self, monkeypatch):
        now = [0.0]
        monkeypatch.setattr(groebner_module, '_clock', lambda: now[0])
        context = CheckContext.create(2, 2)
        context.budget_seconds = 1.0
        report = RepeatedGroebnerCheck(now, 0.6).run(context)
        assert report.status is CheckStatus.PASS
        assert now[0] == pytest.approx(1.8)

    def test_single_slow_run_refused(self, monkeypatch):
        now = [0.0]

        def clock():
            now[0] += 2.0
            return now[0]

        monkeypatch.setattr(groebner_module, '_clock', clock)
        context = CheckContext.create(2, 2)
        context.budget_seconds = 1.0
        report = RepeatedGroebnerCheck(now, 0.0).run(context)
        assert report.status is CheckStatus.REFUSED
        assert "time budget" in report.notes[0]
