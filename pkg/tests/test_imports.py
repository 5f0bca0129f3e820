"""
Smoke test: the package and its third-party stack import cleanly
"""
import importlib

import pytest

MODULES = [
    'idealforge',
    'idealforge.cli',
    'idealforge.verifier',
    'idealforge.orchestrator',
    'idealforge.checks',
    'idealforge.family',
]


@pytest.mark.parametrize("module", MODULES)
def test_module_imports(module):
    assert importlib.import_module(module) is not None


@pytest.mark.parametrize("package", ['numpy', 'sympy', 'tabulate', 'toml', 'orjson'])
def test_dependency_available(package):
    assert importlib.import_module(package) is not None
