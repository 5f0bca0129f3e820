"""
Test environment configuration and suite loading
"""
import pytest

from idealforge.config import Config, SuiteConfig
from idealforge.errors import ConfigError
from idealforge.monitoring import CorrelationContext, correlation_context, monitor_execution, monitoring


class TestConfig:
    """Environment variables and validation"""

    def test_defaults(self, monkeypatch):
        for name in ('IDEALFORGE_ENABLED_PARAMS', 'IDEALFORGE_SEED', 'IDEALFORGE_WORKERS'):
            monkeypatch.delenv(name, raising=False)
        cfg = Config()
        assert cfg.enabled_params == [(2, 2), (2, 3), (3, 2)]
        assert cfg.seed == 7
        assert cfg.workers == 4
        assert cfg.is_enabled(3, 2)
        assert not cfg.is_enabled(4, 2)
        assert cfg.is_enabled(4, 2, force=True)

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv('IDEALFORGE_ENABLED_PARAMS', '4:2, 5:3')
        monkeypatch.setenv('IDEALFORGE_WORKERS', '2')
        cfg = Config()
        assert cfg.enabled_params == [(4, 2), (5, 3)]
        assert cfg.workers == 2

    def test_bad_params(self, monkeypatch):
        monkeypatch.setenv('IDEALFORGE_ENABLED_PARAMS', '4-2')
        with pytest.raises(ConfigError):
            Config()

    def test_validate(self, monkeypatch):
        monkeypatch.setenv('IDEALFORGE_WORKERS', '0')
        with pytest.raises(ConfigError):
            Config().validate()
        monkeypatch.setenv('IDEALFORGE_WORKERS', '1')
        monkeypatch.setenv('IDEALFORGE_LOG_LEVEL', 'chatty')
        with pytest.raises(ConfigError):
            Config().validate()


class TestSuiteLoading:

    def setup_method(self):
        self.cfg = Config()

    def test_defaults(self):
        suite = self.cfg.load_suite()
        assert suite.checks == ['all']
        assert suite.params == [(2, 2)]
        assert suite.field_name == 'default'

    def test_file_and_overrides(self, tmp_path):
        path = tmp_path / "suite.toml"
        path.write_text('[suite]\nchecks = ["count"]\nparams = [{ n = 2, d = 3 }, { n = 3, d = 2 }]\nseed = 11\n')
        suite = self.cfg.load_suite(str(path), {'seed': 5, 'field': None, 'force': True})
        assert suite.checks == ['count']
        assert suite.params == [(2, 3), (3, 2)]
        assert suite.seed == 5
        assert suite.force
        assert suite.to_dict()['params'] == [{'n': 2, 'd': 3}, {'n': 3, 'd': 2}]

    def test_string_forms(self):
        suite = self.cfg.load_suite(overrides={'checks': 'colon-b04', 'params': '2:2,3:2'})
        assert suite.checks == ['colon-b04']
        assert suite.params == [(2, 2), (3, 2)]

    def test_invalid_suite(self, tmp_path):
        with pytest.raises(ConfigError):
            self.cfg.load_suite(str(tmp_path / "missing.toml"))
        bad = tmp_path / "bad.toml"
        bad.write_text("[suite\n")
        with pytest.raises(ConfigError):
            self.cfg.load_suite(str(bad))
        with pytest.raises(ConfigError):
            self.cfg.load_suite(overrides={'workers': 0})
        with pytest.raises(ConfigError):
            self.cfg.load_suite(overrides={'seed': 'many'})

    def test_suite_config_dict(self):
        assert SuiteConfig().to_dict()['checks'] == ['all']


class TestMonitoring:

    def test_correlation_context(self):
        assert CorrelationContext.get_correlation_id() is None
        with correlation_context('outer') as outer:
            assert outer == 'outer'
            with correlation_context() as inner:
                assert CorrelationContext.get_correlation_id() == inner
            assert CorrelationContext.get_correlation_id() == 'outer'
        assert CorrelationContext.get_correlation_id() is None

    def test_monitor_execution(self):
        @monitor_execution('unit')
        def double(x):
            return 2 * x

        assert double(4) == 8
        assert monitoring.metrics.get_timing_stats('unit_duration_ms', {'function': 'double'})['count'] >= 1

    def test_structured_logger(self):
        logger = monitoring.get_logger('idealforge.tests')
        with correlation_context('run-1'):
            logger.info("hello", context={'n': 2})
        recent = logger.get_recent_logs(limit=1)[0]
        assert recent['message'] == "hello"
        assert recent['run_id'] == 'run-1'
        assert recent['context'] == {'n': 2}

    def test_groebner_summary(self):
        summary = monitoring.groebner_summary()
        assert set(summary) == {'runs', 'spairs_reduced', 'spairs_pruned', 'timing', 'uptime_s'}
        assert summary['uptime_s'] >= 0
