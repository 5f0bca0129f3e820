"""
Exact coefficient arithmetic

Two kinds of fields: the rationals (values are fractions.Fraction) and prime
fields (values are ints in [0, p)). Polynomials store raw values and call the
owning Field for arithmetic; Scalar wraps a value with its field for the
public API.
"""
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Union

from sympy import factorint, isprime

from .errors import DivisionByZeroError, FieldError, ParseError

Value = Union[int, Fraction]

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')
_RESIDUE_RE = re.compile(r'^\s*(\d+)\s+mod\s+(\d+)\s*$')


class FieldKind(Enum):
    """Coefficient field kinds"""
    RATIONALS = "QQ"
    PRIME = "GF"


@dataclass(frozen=True)
class FieldSpec:
    """Field description; unity_order is the order of roots of unity required"""
    kind: FieldKind
    modulus: Optional[int] = None
    unity_order: int = 1

    def to_dict(self) -> Dict[str, object]:
        return {'kind': self.kind.value, 'modulus': self.modulus, 'unity_order': self.unity_order}


class Field:
    """
    An immutable coefficient field.

    Construct through field_make so equal specs share one instance.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._validate()
        self.is_prime = spec.kind is FieldKind.PRIME
        self.p = spec.modulus if self.is_prime else 0
        self.zero: Value = 0 if self.is_prime else Fraction(0)
        self.one: Value = 1 if self.is_prime else Fraction(1)

    def _validate(self):
        spec = self.spec
        if spec.unity_order < 1:
            raise FieldError(f"unity_order must be positive, got {spec.unity_order}")
        if spec.kind is FieldKind.RATIONALS:
            if spec.modulus is not None:
                raise FieldError("The rationals take no modulus")
            if spec.unity_order not in (1, 2):
                raise FieldError(f"The rationals only contain roots of unity of order 1 and 2, not {spec.unity_order}")
            return
        p = spec.modulus
        if p is None or p < 2 or not isprime(p):
            raise FieldError(f"Prime field modulus must be prime, got {p}")
        if (p - 1) % spec.unity_order != 0:
            raise FieldError(f"{p} is not 1 mod {spec.unity_order}; no primitive root of that order")

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.is_prime else "QQ"

    def characteristic(self) -> int:
        return self.p

    def __repr__(self) -> str:
        return f"Field({self.name}, unity_order={self.spec.unity_order})"

    # Arithmetic on raw values

    def convert(self, value: Union[int, Fraction]) -> Value:
        """Map an int or Fraction into canonical field form"""
        if self.is_prime:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise FieldError(f"{value} has no image in {self.name}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def add(self, a: Value, b: Value) -> Value:
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a: Value, b: Value) -> Value:
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a: Value, b: Value) -> Value:
        return a * b % self.p if self.is_prime else a * b

    def neg(self, a: Value) -> Value:
        return -a % self.p if self.is_prime else -a

    def inv(self, a: Value) -> Value:
        if self.is_zero(a):
            raise DivisionByZeroError(f"Inverse of zero in {self.name}")
        return pow(a, -1, self.p) if self.is_prime else 1 / a

    def div(self, a: Value, b: Value) -> Value:
        return self.mul(a, self.inv(b))

    def pow(self, a: Value, k: int) -> Value:
        if k < 0:
            return self.pow(self.inv(a), -k)
        return pow(a, k, self.p) if self.is_prime else a ** k

    def is_zero(self, a: Value) -> bool:
        return a == 0

    def is_one(self, a: Value) -> bool:
        return a == 1

    # Text

    def parse(self, text: str) -> Value:
        """Parse an integer, a/b fraction or 'r mod p' residue"""
        match = _RESIDUE_RE.match(text)
        if match:
            if not self.is_prime or int(match.group(2)) != self.p:
                raise ParseError(f"Residue literal '{text.strip()}' does not belong to {self.name}")
            return int(match.group(1)) % self.p
        match = _RATIONAL_RE.match(text)
        if not match:
            raise ParseError(f"Not a scalar literal: '{text}'")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) else 1
        if denominator == 0:
            raise ParseError(f"Zero denominator in '{text.strip()}'")
        try:
            return self.convert(Fraction(numerator, denominator))
        except FieldError as e:
            raise ParseError(str(e))

    def format(self, a: Value) -> str:
        """Plain form: integers or a/b; prime-field residues print as 'r mod p'"""
        if self.is_prime:
            return f"{a} mod {self.p}"
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def signed(self, a: Value) -> Union[int, Fraction]:
        """Symmetric representative, used when printing polynomials"""
        if self.is_prime:
            return a - self.p if a > self.p // 2 else a
        return a

    # Roots of unity

    def _check_root_order(self, m: int):
        if m < 1:
            raise FieldError(f"Root order must be positive, got {m}")
        if self.is_prime:
            if (self.p - 1) % m != 0:
                raise FieldError(f"{self.name} has no primitive {m}-th root of unity")
        elif m not in (1, 2):
            raise FieldError(f"QQ has no primitive {m}-th root of unity")

    def roots_of_unity(self, m: int) -> List[Value]:
        """All m-th roots of unity (any order dividing m), ascending"""
        self._check_root_order(m)
        if not self.is_prime:
            return [Fraction(-1), Fraction(1)] if m == 2 else [Fraction(1)]
        zeta = self.root_of_unity(m)
        return sorted({pow(zeta, k, self.p) for k in range(m)})

    def primitive_roots(self, m: int) -> List[Value]:
        """Primitive m-th roots of unity, ascending"""
        return [z for z in self.roots_of_unity(m) if self.multiplicative_order(z) == m]

    def multiplicative_order(self, a: Value) -> int:
        if self.is_zero(a):
            raise FieldError("Zero has no multiplicative order")
        if not self.is_prime:
            if a == 1:
                return 1
            if a == -1:
                return 2
            raise FieldError(f"{a} has infinite order in QQ")
        order = self.p - 1
        for q, e in factorint(order).items():
            for _ in range(e):
                if pow(a, order // q, self.p) == 1:
                    order //= q
                else:
                    break
        return order

    def root_of_unity(self, m: int) -> Value:
        """Smallest positive residue that is a primitive m-th root of unity"""
        return _smallest_primitive_root(self, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.spec.kind == other.spec.kind and self.p == other.p

    def __hash__(self) -> int:
        return hash((self.spec.kind, self.p))


@lru_cache(maxsize=None)
def _smallest_primitive_root(field: Field, m: int) -> Value:
    field._check_root_order(m)
    if not field.is_prime:
        return Fraction(-1) if m == 2 else Fraction(1)
    if m == 1:
        return 1
    p = field.p
    prime_factors = list(factorint(m))
    # Find one primitive root of order m, then take the least of its primitive powers
    for x in range(2, p):
        zeta = pow(x, (p - 1) // m, p)
        if all(pow(zeta, m // q, p) != 1 for q in prime_factors):
            break
    else:
        raise FieldError(f"{field.name} has no primitive {m}-th root of unity")
    candidates = [pow(zeta, k, p) for k in range(1, m + 1)
                  if all(k % q != 0 for q in prime_factors)]
    return min(candidates)


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field"""
    value: Value
    field: Field

    def __post_init__(self):
        object.__setattr__(self, 'value', self.field.convert(self.value))

    def __add__(self, other: 'Scalar') -> 'Scalar':
        return Scalar(self.field.add(self.value, self._coerce(other)), self.field)

    def __sub__(self, other: 'Scalar') -> 'Scalar':
        return Scalar(self.field.sub(self.value, self._coerce(other)), self.field)

    def __mul__(self, other: 'Scalar') -> 'Scalar':
        return Scalar(self.field.mul(self.value, self._coerce(other)), self.field)

    def __truediv__(self, other: 'Scalar') -> 'Scalar':
        return Scalar(self.field.div(self.value, self._coerce(other)), self.field)

    def __neg__(self) -> 'Scalar':
        return Scalar(self.field.neg(self.value), self.field)

    def __pow__(self, k: int) -> 'Scalar':
        return Scalar(self.field.pow(self.value, k), self.field)

    def inverse(self) -> 'Scalar':
        return Scalar(self.field.inv(self.value), self.field)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def _coerce(self, other) -> Value:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"Cannot combine scalars of {self.field.name} and {other.field.name}")
            return other.value
        return self.field.convert(other)

    def __str__(self) -> str:
        return self.field.format(self.value)


@lru_cache(maxsize=None)
def field_make(spec: FieldSpec) -> Field:
    """Validated, shared field handle for a spec"""
    return Field(spec)


def rationals(unity_order: int = 1) -> Field:
    return field_make(FieldSpec(FieldKind.RATIONALS, None, unity_order))


def prime_field(p: int, unity_order: int = 1) -> Field:
    return field_make(FieldSpec(FieldKind.PRIME, p, unity_order))


def root_of_unity(field: Field, m: int) -> Scalar:
    """Fixed primitive m-th root of unity (smallest residue)"""
    return Scalar(field.root_of_unity(m), field)


def required_unity_order(n: int, d: int) -> int:
    """
    Order of roots of unity needed by the prime list of K(n, d) and its recursion.

    Level n uses d^2-th roots; K(n-1, d^2) needs (d^2)^2-th roots, down to the
    n = 2 base, which needs its own d'^2.
    """
    return d ** max(2, 2 ** (n - 2))


@lru_cache(maxsize=None)
def default_prime(unity_order: int, floor: int = 2 ** 30) -> int:
    """Smallest prime p > floor with p = 1 mod unity_order"""
    k = floor // unity_order + 1
    while not isprime(k * unity_order + 1):
        k += 1
    return k * unity_order + 1


def verification_field(n: int, d: int) -> Field:
    """Default prime field for the family checks at (n, d)"""
    m = required_unity_order(n, d)
    return prime_field(default_prime(m), m)


def field_from_name(name: str, n: int = 2, d: int = 2) -> Field:
    """Resolve a CLI/config field name: 'QQ', 'default' or a prime"""
    text = name.strip()
    if text.upper() == 'QQ':
        return rationals(2)
    if text.lower() == 'default':
        return verification_field(n, d)
    try:
        p = int(text)
    except ValueError:
        raise FieldError(f"Unknown field '{name}', expected QQ, default or a prime")
    m = required_unity_order(n, d)
    unity = m if p > 2 and (p - 1) % m == 0 else 1
    return prime_field(p, unity)
