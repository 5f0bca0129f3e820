"""
Base Check Interface

Defines the contract that all verification checks must implement
"""
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..config import config
from ..errors import BudgetExceeded, GuardExceeded
from ..family.generators import FamilyParams
from ..groebner import budget
from ..monitoring import monitoring
from ..scalars import Field, field_from_name


class CheckStatus(Enum):
    """Outcome of one check"""
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"
    REFUSED = "Refused"


class CheckKind(Enum):
    IDENTITY = "IdentityEqual"
    MEMBERSHIP = "Membership"
    PRIME_LIST = "PrimeList"
    FACT = "FactProperty"
    COUNT = "CountCrossCheck"
    ORACLE = "Oracle"


@dataclass
class CheckContext:
    """Everything a check needs besides its own parameters"""
    params: FamilyParams
    field: Field
    literal: bool = False
    seed: int = 7
    force: bool = False
    budget_seconds: Optional[float] = None

    @classmethod
    def create(cls, n: int, d: int, field_name: str = 'default', literal: bool = False,
               seed: Optional[int] = None, force: bool = False) -> 'CheckContext':
        params = FamilyParams(n, d)
        return cls(params, field_from_name(field_name, n, d), literal,
                   config.seed if seed is None else seed, force, config.budget_seconds)


@dataclass
class CheckReport:
    """Result of running one check at one (n, d)"""
    check_id: str
    params: FamilyParams
    field: str
    status: CheckStatus
    witness: Optional[Dict[str, Any]] = None
    max_coeff_degree: Optional[int] = None
    elapsed_ms: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        """Convert to dictionary for the JSON report"""
        data: Dict[str, Any] = {
            'check_id': self.check_id,
            'params': {'n': self.params.n, 'd': self.params.d, 'field': self.field},
            'status': self.status.value,
            'notes': list(self.notes),
        }
        if self.witness is not None:
            data['witness'] = self.witness
        if self.max_coeff_degree is not None:
            data['max_coeff_degree'] = self.max_coeff_degree
        if timings:
            data['elapsed_ms'] = round(self.elapsed_ms, 3)
        return data


class BaseCheck(ABC):
    """
    Abstract base class for all verification checks

    All checks must implement:
    - evaluate(): the check itself, returning a CheckReport
    - get_id(): registry identifier
    - get_description(): human readable description

    run() wraps evaluate() with the budget policy, the per-run Gröbner time cap and
    error conversion, so a check never raises.
    """

    kind: CheckKind = CheckKind.IDENTITY
    # Checks on the K(n, d) family obey the enabled-parameter policy
    family_sized: bool = True

    def __init__(self, parameters: Optional[Dict[str, Any]] = None):
        self.parameters = parameters or {}
        self.check_id = self.get_id()
        self.description = self.get_description()
        self.logger = monitoring.get_logger(self.__class__.__module__)
        self._validate_parameters()

    @abstractmethod
    def get_id(self) -> str:
        """Return unique check id"""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """Return human-readable check description"""
        pass

    @abstractmethod
    def evaluate(self, context: CheckContext) -> CheckReport:
        """Run the check; may raise BudgetExceeded"""
        pass

    def get_parameters(self) -> Dict[str, Any]:
        """Return check parameters with defaults and descriptions"""
        return {}

    @property
    def depends_on(self) -> Tuple[str, ...]:
        return ()

    def applies_to(self, n: int, d: int) -> bool:
        return True

    def _validate_parameters(self):
        specs = self.get_parameters()
        for key, value in self.parameters.items():
            spec = specs.get(key)
            if spec is None:
                raise ValueError(f"Unknown parameter '{key}' for check '{self.check_id}'")
            if 'min' in spec and value < spec['min']:
                raise ValueError(f"Parameter '{key}' below minimum: {value} < {spec['min']}")

    def get_parameter(self, name: str, default: Any = None) -> Any:
        """Get parameter value with fallback to default"""
        spec = self.get_parameters().get(name, {})
        return self.parameters.get(name, spec.get('default', default))

    def report(self, context: CheckContext, status: CheckStatus, witness: Optional[Dict[str, Any]] = None,
               notes: Optional[List[str]] = None, max_coeff_degree: Optional[int] = None) -> CheckReport:
        return CheckReport(self.check_id, context.params, context.field.name, status, witness,
                           max_coeff_degree, 0.0, list(notes or []))

    def run(self, context: CheckContext) -> CheckReport:
        """Evaluate under the budget policy; every outcome becomes a report"""
        n, d = context.params.n, context.params.d
        start = time.perf_counter()
        if self.family_sized and not config.is_enabled(n, d, context.force):
            result = self.report(context, CheckStatus.REFUSED,
                                 notes=[f"(n, d) = ({n}, {d}) is outside the enabled budget; use --force"])
        elif not self.applies_to(n, d):
            result = self.report(context, CheckStatus.SKIPPED, notes=[f"Not defined at n = {n}"])
        else:
            try:
                with budget(context.budget_seconds):
                    result = self.evaluate(context)
            except (BudgetExceeded, GuardExceeded) as e:
                result = self.report(context, CheckStatus.REFUSED, notes=[str(e)])
            except Exception as e:
                self.logger.error(f"Check {self.check_id} raised", context={
                    'n': n, 'd': d, 'error': f"{type(e).__name__}: {e}"})
                result = self.report(context, CheckStatus.FAIL, witness={'error': f"{type(e).__name__}: {e}"},
                                     notes=[f"Unexpected error: {type(e).__name__}: {e}"])
        result.elapsed_ms = (time.perf_counter() - start) * 1000
        monitoring.record_check(self.check_id, result.status.value, result.elapsed_ms)
        self.logger.info(f"Check {self.check_id} finished", context={
            'n': n, 'd': d, 'status': result.status.value, 'elapsed_ms': round(result.elapsed_ms, 1)})
        return result

    def __str__(self) -> str:
        return f"{self.check_id}: {self.description}"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(id='{self.check_id}', parameters={self.parameters})>"
