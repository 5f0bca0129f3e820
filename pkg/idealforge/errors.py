"""
Exception hierarchy for idealforge

Parameter problems subclass ValueError so callers can keep catching the
builtin; resource problems (budgets, guards) do not.
"""


class IdealForgeError(Exception):
    """Base class for all idealforge errors"""


class FieldError(IdealForgeError, ValueError):
    """Invalid field specification or missing root of unity"""


class RingMismatchError(IdealForgeError, ValueError):
    """Operands live in different rings"""


class ParseError(IdealForgeError, ValueError):
    """Malformed polynomial or ideal text"""


class DivisionByZeroError(IdealForgeError, ZeroDivisionError):
    """Inverse of zero, or a colon by the zero polynomial"""


class FamilyError(IdealForgeError, ValueError):
    """Invalid family parameters or prime-candidate arguments"""


class UnknownCheckError(IdealForgeError, KeyError):
    """Check id not present in the registry"""


class ConfigError(IdealForgeError, ValueError):
    """Configuration or suite file could not be parsed"""


class BudgetExceeded(IdealForgeError):
    """A Gröbner computation ran past its time budget"""


class SaturationLimitError(IdealForgeError):
    """Saturation did not stabilize within the iteration cap"""


class GuardExceeded(IdealForgeError):
    """Linear-algebra oracle would exceed its unknowns guard"""
