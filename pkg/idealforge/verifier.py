"""
Verification entry points: one function per kind of check, and the suite
"""
from typing import Optional

from .checks.base_check import CheckContext, CheckReport
from .checks.check_manager import CheckManager, check_manager
from .checks.count_check import CountCheck
from .checks.fact_checks import FactCheck
from .checks.identity_checks import IdentityCheck
from .checks.membership_check import MembershipCheck
from .checks.prime_list_check import PrimeListCheck
from .config import SuiteConfig, config
from .family.displays import get_chain
from .family.generators import FamilyParams
from .orchestrator import run_suite_sync


def _context(params: FamilyParams, field_name: str, literal: bool = False, seed: Optional[int] = None,
             force: bool = False) -> CheckContext:
    return CheckContext.create(params.n, params.d, field_name, literal, seed, force)


def verify_fact(fact_id: str, trials: Optional[int] = None, seed: Optional[int] = None) -> CheckReport:
    """Random trials of one identity; fact_id is a check id or its number ('0.1', '0.2', '0.3')"""
    if trials is not None and trials < 1:
        raise ValueError("trials must be at least 1")
    check = FactCheck(fact_id, {'trials': trials} if trials is not None else None)
    return check.run(_context(FamilyParams(2, 2), 'QQ', seed=seed))


def verify_identity(check_id: str, params: FamilyParams, field_name: str = 'default',
                    literal: bool = False, force: bool = False) -> CheckReport:
    """Every step of one display chain; raises UnknownCheckError for unknown ids"""
    check = IdentityCheck(get_chain(check_id))
    return check.run(_context(params, field_name, literal, force=force))


def verify_membership(params: FamilyParams, track_certificate: bool = True, field_name: str = 'default',
                      force: bool = False) -> CheckReport:
    check = MembershipCheck({'track_certificate': track_certificate})
    return check.run(_context(params, field_name, force=force))


def verify_prime_list(params: FamilyParams, field_name: str = 'default', force: bool = False) -> CheckReport:
    return PrimeListCheck().run(_context(params, field_name, force=force))


def verify_count(params: FamilyParams, field_name: str = 'default', force: bool = False) -> CheckReport:
    return CountCheck().run(_context(params, field_name, force=force))


def run_suite(suite: Optional[SuiteConfig] = None, manager: Optional[CheckManager] = None):
    """All checks the suite names, in dependency order; reports sorted by check id"""
    suite = suite or config.load_suite()
    return run_suite_sync(suite, manager or check_manager)
