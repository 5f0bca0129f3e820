"""
Closed-form count of candidate primes against the enumeration
"""
from ..family.primes import count_primes_formula, count_primes_listed, enumerate_primes
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus


class CountCheck(BaseCheck):
    """Reports formula, listed and enumerated counts side by side; never fails on a mismatch"""

    kind = CheckKind.COUNT

    def get_id(self) -> str:
        return 'count'

    def get_description(self) -> str:
        return "Prime count formula against the enumerated list"

    def evaluate(self, context: CheckContext) -> CheckReport:
        params = context.params
        formula = count_primes_formula(params)
        listed = count_primes_listed(params)
        enumeration = enumerate_primes(params, context.field)
        notes = [
            f"formula {formula}",
            f"listed families {listed}",
            f"enumerated {enumeration.raw_count} before and {len(enumeration)} after duplicate removal",
        ]
        if formula != enumeration.raw_count:
            notes.append(f"formula differs from the enumeration by {formula - enumeration.raw_count}")
        return self.report(context, CheckStatus.PASS, notes=notes + list(enumeration.notices))
