"""
Check Manager

Registry of verification checks: registration, lookup, selection with
upstream dependencies, and topological layering for the scheduler
"""
from typing import Any, Dict, Iterable, List, Optional

from ..errors import UnknownCheckError
from ..monitoring import monitoring
from .base_check import BaseCheck
from .count_check import CountCheck
from .fact_checks import FACT_ALIASES, fact_checks
from .identity_checks import identity_checks
from .membership_check import MembershipCheck
from .oracle_check import OracleCheck
from .prime_list_check import PrimeListCheck


class CheckManager:
    """
    Holds every registered check. The dependency graph between checks is a
    DAG; selections always include the upstream checks they depend on.
    """

    def __init__(self):
        self.checks: Dict[str, BaseCheck] = {}
        self.logger = monitoring.get_logger(__name__)
        self._initialize_default_checks()

    def _initialize_default_checks(self):
        defaults: List[BaseCheck] = [*fact_checks(), OracleCheck(), *identity_checks(),
                                     MembershipCheck(), PrimeListCheck(), CountCheck()]
        for check in defaults:
            self.register_check(check)
        self.logger.debug(f"Initialized {len(self.checks)} default checks")

    def register_check(self, check: BaseCheck) -> bool:
        """
        Register a check instance

        Returns:
            True if registered; False if the id is taken or a dependency is unknown
        """
        if not isinstance(check, BaseCheck):
            raise ValueError("Check must inherit from BaseCheck")
        if check.check_id in self.checks:
            self.logger.warning(f"Check already registered: {check.check_id}")
            return False
        missing = [dep for dep in check.depends_on if dep not in self.checks]
        if missing:
            self.logger.error(f"Check {check.check_id} depends on unregistered checks: {missing}")
            return False
        self.checks[check.check_id] = check
        return True

    def get_check(self, check_id: str) -> BaseCheck:
        check_id = FACT_ALIASES.get(check_id, check_id)
        if check_id not in self.checks:
            raise UnknownCheckError(f"Unknown check '{check_id}'; see `verify --list`")
        return self.checks[check_id]

    def list_checks(self) -> Dict[str, Dict[str, Any]]:
        """All registered checks with their information"""
        return {
            check_id: {
                'kind': check.kind.value,
                'description': check.description,
                'depends_on': list(check.depends_on),
                'parameters': {k: v.get('default') for k, v in check.get_parameters().items()},
            }
            for check_id, check in self.checks.items()
        }

    def resolve(self, names: Iterable[str]) -> List[str]:
        """Check ids for a selection ('all' or ids), closed under dependencies"""
        names = list(names)
        if 'all' in names:
            return list(self.checks)
        selected: Dict[str, None] = {}
        pending = [self.get_check(name).check_id for name in names]
        while pending:
            check_id = pending.pop()
            if check_id in selected:
                continue
            selected[check_id] = None
            pending.extend(self.checks[check_id].depends_on)
        added = sorted(set(selected) - {self.get_check(name).check_id for name in names})
        if added:
            self.logger.info("Added upstream checks", context={'checks': added})
        return [check_id for check_id in self.checks if check_id in selected]

    def topological_order(self, check_ids: Optional[Iterable[str]] = None) -> List[List[str]]:
        """
        Layers of check ids; every check comes after all its dependencies.
        Ids within a layer keep registration order.
        """
        ids = list(self.checks) if check_ids is None else list(check_ids)
        remaining = {check_id: set(self.checks[check_id].depends_on) & set(ids) for check_id in ids}
        layers: List[List[str]] = []
        done: set = set()
        while remaining:
            layer = [check_id for check_id, deps in remaining.items() if deps <= done]
            if not layer:
                raise ValueError(f"Dependency cycle among checks: {sorted(remaining)}")
            layers.append(layer)
            done.update(layer)
            for check_id in layer:
                del remaining[check_id]
        return layers


# Global check manager instance
check_manager = CheckManager()
