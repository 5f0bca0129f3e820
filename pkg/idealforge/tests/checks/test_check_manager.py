"""
Test the check registry and its dependency handling
"""
import pytest

from idealforge.checks.base_check import BaseCheck, CheckContext, CheckReport, CheckStatus
from idealforge.checks.check_manager import CheckManager
from idealforge.checks.count_check import CountCheck
from idealforge.errors import UnknownCheckError


class DependentCheck(BaseCheck):

    def __init__(self, check_id, depends_on=()):
        self._id = check_id
        self._depends_on = tuple(depends_on)
        super().__init__()

    def get_id(self) -> str:
        return self._id

    def get_description(self) -> str:
        return f"Depends on {self._depends_on}"

    @property
    def depends_on(self):
        return self._depends_on

    def evaluate(self, context: CheckContext) -> CheckReport:
        return self.report(context, CheckStatus.PASS)


class TestCheckManager:
    """Registration, lookup and selection"""

    def setup_method(self):
        self.manager = CheckManager()

    def test_default_checks(self):
        checks = self.manager.list_checks()
        for check_id in ('fact-modular-law', 'fact-principal-meet', 'fact-colon-of-sum', 'oracle',
                         'sumdecomp-b04', 'colon-b04', 'n2-chain', 'membership', 'prime-list', 'count'):
            assert check_id in checks
        assert checks['colon-b04-plus-c12']['depends_on'] == ['colon-b04']
        assert checks['fact-modular-law']['parameters'] == {'trials': 200}

    def test_duplicate_registration(self):
        assert not self.manager.register_check(CountCheck())

    def test_missing_dependency(self):
        assert not self.manager.register_check(DependentCheck('orphan', ['nowhere']))
        assert 'orphan' not in self.manager.checks

    def test_register_rejects_non_checks(self):
        with pytest.raises(ValueError):
            self.manager.register_check(object())

    def test_aliases(self):
        assert self.manager.get_check('0.1').check_id == 'fact-modular-law'
        assert self.manager.get_check('0.3').check_id == 'fact-colon-of-sum'

    def test_unknown_check(self):
        with pytest.raises(UnknownCheckError):
            self.manager.get_check('no-such-check')
        with pytest.raises(UnknownCheckError):
            self.manager.resolve(['no-such-check'])

    def test_resolve_adds_upstream(self):
        assert self.manager.resolve(['colon-b04-plus-c12']) == ['colon-b04', 'colon-b04-plus-c12']
        assert self.manager.resolve(['all']) == list(self.manager.checks)

    def test_topological_order(self):
        layers = self.manager.topological_order(['colon-b04-plus-c12', 'colon-b04', 'count'])
        assert layers == [['colon-b04', 'count'], ['colon-b04-plus-c12']]
        position = {check_id: i for i, layer in enumerate(self.manager.topological_order()) for check_id in layer}
        for check_id, check in self.manager.checks.items():
            assert all(position[dep] < position[check_id] for dep in check.depends_on)

    def test_cycle_detected(self):
        self.manager.checks['loop-a'] = DependentCheck('loop-a', ['loop-b'])
        self.manager.checks['loop-b'] = DependentCheck('loop-b', ['loop-a'])
        with pytest.raises(ValueError):
            self.manager.topological_order(['loop-a', 'loop-b'])
