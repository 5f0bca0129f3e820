"""
Configuration management for idealforge
Loads settings from environment variables with sensible defaults, and
verification suites from TOML files
"""
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Any, List, Optional, Tuple

import toml

from .errors import ConfigError


def _parse_params(text: str) -> List[Tuple[int, int]]:
    """Parse "2:2,2:3" into [(2, 2), (2, 3)]"""
    pairs = []
    for chunk in text.split(','):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            n_text, d_text = chunk.split(':')
            pairs.append((int(n_text), int(d_text)))
        except ValueError:
            raise ConfigError(f"Invalid parameter pair '{chunk}', expected n:d")
    return pairs


@dataclass
class SuiteConfig:
    """A verification run: which checks, at which (n, d), how wide"""
    checks: List[str] = field(default_factory=lambda: ['all'])
    params: List[Tuple[int, int]] = field(default_factory=lambda: [(2, 2)])
    field_name: str = 'default'
    workers: int = 4
    seed: int = 7
    force: bool = False
    literal: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            'checks': list(self.checks),
            'params': [{'n': n, 'd': d} for n, d in self.params],
            'field': self.field_name,
            'workers': self.workers,
            'seed': self.seed,
            'force': self.force,
            'literal': self.literal,
        }


class Config:
    """Centralized configuration management"""

    def __init__(self):
        # Budgets
        self.budget_seconds = float(os.getenv('IDEALFORGE_BUDGET_SECONDS', '600'))
        self.enabled_params = _parse_params(os.getenv('IDEALFORGE_ENABLED_PARAMS', '2:2,2:3,3:2'))
        self.saturation_cap = int(os.getenv('IDEALFORGE_SATURATION_CAP', '64'))
        self.max_unknowns = int(os.getenv('IDEALFORGE_MAX_UNKNOWNS', '5000000'))

        # Suite defaults
        self.workers = int(os.getenv('IDEALFORGE_WORKERS', '4'))
        self.seed = int(os.getenv('IDEALFORGE_SEED', '7'))
        self.fact_trials = int(os.getenv('IDEALFORGE_FACT_TRIALS', '200'))
        self.oracle_trials = int(os.getenv('IDEALFORGE_ORACLE_TRIALS', '50'))
        self.oracle_degree = int(os.getenv('IDEALFORGE_ORACLE_DEGREE', '6'))

        # Readings of the family displays
        self.g25_drop_c2i = os.getenv('IDEALFORGE_G25_DROP_C2I', 'true').lower() == 'true'

        # Logging
        self.log_level = os.getenv('IDEALFORGE_LOG_LEVEL', 'WARNING').upper()

    def validate(self):
        """
        Validate numeric settings.
        Raises ConfigError on the first invalid value.
        """
        if self.budget_seconds <= 0:
            raise ConfigError("IDEALFORGE_BUDGET_SECONDS must be positive")
        if self.workers < 1:
            raise ConfigError("IDEALFORGE_WORKERS must be at least 1")
        if self.saturation_cap < 1:
            raise ConfigError("IDEALFORGE_SATURATION_CAP must be at least 1")
        if self.fact_trials < 1 or self.oracle_trials < 1:
            raise ConfigError("Trial counts must be at least 1")
        if self.log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            raise ConfigError(f"Unknown log level: {self.log_level}")
        for n, d in self.enabled_params:
            if n < 2 or d < 2:
                raise ConfigError(f"Enabled parameters must satisfy n, d >= 2, got {n}:{d}")

    def is_enabled(self, n: int, d: int, force: bool = False) -> bool:
        """Budget policy: only configured (n, d) run unless forced"""
        return force or (n, d) in self.enabled_params

    def load_suite(self, path: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> SuiteConfig:
        """
        Build a SuiteConfig from an optional TOML file plus overrides

        Args:
            path: TOML file with a [suite] table
            overrides: values that win over the file (None values ignored)

        Returns:
            SuiteConfig
        """
        data: Dict[str, Any] = {}
        if path:
            try:
                data = toml.load(Path(path)).get('suite', {})
            except (OSError, toml.TomlDecodeError) as e:
                raise ConfigError(f"Cannot read suite file {path}: {e}")
        for key, value in (overrides or {}).items():
            if value is not None:
                data[key] = value

        suite = SuiteConfig(workers=self.workers, seed=self.seed)
        try:
            if 'checks' in data:
                checks = data['checks']
                suite.checks = [checks] if isinstance(checks, str) else list(checks)
            if 'params' in data:
                params = data['params']
                if isinstance(params, str):
                    suite.params = _parse_params(params)
                else:
                    suite.params = [(int(p['n']), int(p['d'])) if isinstance(p, dict) else (int(p[0]), int(p[1]))
                                    for p in params]
            suite.field_name = str(data.get('field', suite.field_name))
            suite.workers = int(data.get('workers', suite.workers))
            suite.seed = int(data.get('seed', suite.seed))
            suite.force = bool(data.get('force', suite.force))
            suite.literal = bool(data.get('literal', suite.literal))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(f"Invalid suite configuration: {e}")
        if suite.workers < 1:
            raise ConfigError("Suite workers must be at least 1")
        return suite


# Global configuration instance
config = Config()
