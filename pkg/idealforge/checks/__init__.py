"""
Verification checks and their registry
"""
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus
from .check_manager import CheckManager, check_manager
from .count_check import CountCheck
from .fact_checks import FACT_ALIASES, FACTS, FactCheck, resolve_fact
from .identity_checks import IdentityCheck
from .membership_check import MembershipCheck
from .oracle_check import OracleCheck
from .prime_list_check import PrimeListCheck

__all__ = [
    'BaseCheck', 'CheckContext', 'CheckKind', 'CheckReport', 'CheckStatus',
    'CheckManager', 'check_manager',
    'FactCheck', 'FACTS', 'FACT_ALIASES', 'resolve_fact', 'OracleCheck', 'IdentityCheck',
    'MembershipCheck', 'PrimeListCheck', 'CountCheck',
]
