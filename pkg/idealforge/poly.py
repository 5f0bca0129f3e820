"""
Rings, monomial orders and sparse polynomials

Monomials are exponent tuples, one entry per ring variable. A Polynomial keeps
its terms in a dict whose insertion order is descending under the ring's
default order, so the first key is always the leading monomial.
"""
import re
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor

from .errors import FieldError, ParseError, RingMismatchError
from .scalars import Field, Scalar, Value, rationals

Monomial = Tuple[int, ...]

NAME_RE = re.compile(r'^[a-z][a-z0-9]*$')
_NAME_TOKEN_RE = re.compile(r'[a-z][a-z0-9]*')
_ALLOWED_TEXT_RE = re.compile(r'^[a-z0-9+\-*/^()\s]*$')
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


class RingMode(Enum):
    LONG = "long"
    SHORT = "short"
    CUSTOM = "custom"


def family_variable_names(n: int, include_sf: bool) -> List[str]:
    """s-block, f-block, then b_{ri} by (r, i), then c_{ri} by (r, i)"""
    names: List[str] = []
    if include_sf:
        names += [f"s{r}" for r in range(2, n + 1)]
        names += [f"f{r}" for r in range(2, n + 1)]
    names += [f"b{r}{i}" for r in range(0, n) for i in range(1, 5)]
    names += [f"c{r}{i}" for r in range(1, n) for i in range(1, 5)]
    return names


@dataclass(frozen=True)
class RingSpec:
    """Variable table of a polynomial ring"""
    mode: RingMode
    variables: Tuple[str, ...]
    n: Optional[int] = None

    def __post_init__(self):
        if self.mode is not RingMode.CUSTOM:
            if self.n is None or self.n < 2:
                raise ValueError(f"Family rings need n >= 2, got {self.n}")
        if not self.variables:
            raise ValueError("A ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Duplicate variable names in {self.variables}")
        for name in self.variables:
            if not NAME_RE.match(name):
                raise ValueError(f"Variable name '{name}' does not match [a-z][a-z0-9]*")

    @classmethod
    def long(cls, n: int) -> 'RingSpec':
        if n < 2:
            raise ValueError(f"Family rings need n >= 2, got {n}")
        return cls(RingMode.LONG, tuple(family_variable_names(n, True)), n)

    @classmethod
    def short(cls, n: int) -> 'RingSpec':
        if n < 2:
            raise ValueError(f"Family rings need n >= 2, got {n}")
        return cls(RingMode.SHORT, tuple(family_variable_names(n, False)), n)

    @classmethod
    def custom(cls, names: Sequence[str]) -> 'RingSpec':
        return cls(RingMode.CUSTOM, tuple(names))


class OrderKind(Enum):
    LEX = "lex"
    GREVLEX = "grevlex"
    BLOCK = "block"


def _lex_key(m: Monomial) -> Monomial:
    return m


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


@dataclass(frozen=True)
class MonomialOrder:
    """
    Lex, graded reverse lex, or block: the first block_split variables are
    compared lexicographically and eliminated, ties broken by grevlex on the rest.
    """
    kind: OrderKind
    block_split: int = 0

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        return _order_key(self.kind, self.block_split)

    @classmethod
    def parse(cls, text: str) -> 'MonomialOrder':
        text = text.strip().lower()
        if text.startswith('block'):
            _, _, split = text.partition(':')
            try:
                return cls(OrderKind.BLOCK, int(split))
            except ValueError:
                raise ValueError(f"Block order needs a split, e.g. block:2, got '{text}'")
        try:
            return cls(OrderKind(text))
        except ValueError:
            raise ValueError(f"Unknown monomial order '{text}'")

    def __str__(self) -> str:
        if self.kind is OrderKind.BLOCK:
            return f"block:{self.block_split}"
        return self.kind.value


@lru_cache(maxsize=None)
def _order_key(kind: OrderKind, split: int) -> Callable[[Monomial], tuple]:
    if kind is OrderKind.LEX:
        return _lex_key
    if kind is OrderKind.GREVLEX:
        return _grevlex_key

    def block_key(m: Monomial) -> tuple:
        rest = m[split:]
        return m[:split] + (sum(rest),) + tuple(-e for e in reversed(rest))
    return block_key


LEX = MonomialOrder(OrderKind.LEX)
GREVLEX = MonomialOrder(OrderKind.GREVLEX)


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder(OrderKind.BLOCK, split)


class Ring:
    """A polynomial ring: variable table, coefficient field and default order"""

    def __init__(self, spec: RingSpec, field: Optional[Field] = None, order: MonomialOrder = GREVLEX):
        self.spec = spec
        self.field = field or rationals()
        self.order = order
        self.variables: Tuple[str, ...] = spec.variables
        self.ngens = len(self.variables)
        self.index: Dict[str, int] = {name: i for i, name in enumerate(self.variables)}
        self._symbols = None

    @classmethod
    def long(cls, n: int, field: Optional[Field] = None) -> 'Ring':
        return cls(RingSpec.long(n), field)

    @classmethod
    def short(cls, n: int, field: Optional[Field] = None) -> 'Ring':
        return cls(RingSpec.short(n), field)

    @classmethod
    def custom(cls, names: Sequence[str], field: Optional[Field] = None) -> 'Ring':
        return cls(RingSpec.custom(names), field)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.variables == other.variables and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.variables, self.field))

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.variables)} over {self.field.name})"

    @property
    def name(self) -> str:
        return ','.join(self.variables)

    def zero_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def zero(self) -> 'Polynomial':
        return Polynomial(self, {})

    def one(self) -> 'Polynomial':
        return self.constant(1)

    def constant(self, value: Union[int, Fraction, Scalar]) -> 'Polynomial':
        raw = value.value if isinstance(value, Scalar) else self.field.convert(value)
        return Polynomial(self, {self.zero_monomial(): raw})

    def var(self, name: str) -> 'Polynomial':
        if name not in self.index:
            raise ParseError(f"Unknown variable '{name}' in ring {self.name}")
        exps = [0] * self.ngens
        exps[self.index[name]] = 1
        return Polynomial(self, {tuple(exps): self.field.one}, _sorted=True)

    def gens(self) -> List['Polynomial']:
        return [self.var(name) for name in self.variables]

    def has_var(self, name: str) -> bool:
        return name in self.index

    def extend(self, names: Sequence[str]) -> 'Ring':
        """New ring with the given variables in front of this ring's"""
        return Ring(RingSpec.custom(tuple(names) + self.variables), self.field, self.order)

    def permuted(self, names: Sequence[str]) -> 'Ring':
        if sorted(names) != sorted(self.variables):
            raise RingMismatchError("Permutation must use exactly the ring variables")
        return Ring(RingSpec.custom(tuple(names)), self.field, self.order)

    def restricted(self, names: Sequence[str]) -> 'Ring':
        return Ring(RingSpec.custom(tuple(names)), self.field, self.order)

    def with_field(self, field: Field) -> 'Ring':
        return Ring(self.spec, field, self.order)

    def fresh_name(self, base: str = 't') -> str:
        if base not in self.index:
            return base
        k = 0
        while f"{base}{k}" in self.index:
            k += 1
        return f"{base}{k}"

    def symbols(self) -> Dict[str, Symbol]:
        if self._symbols is None:
            self._symbols = {name: Symbol(name) for name in self.variables}
        return self._symbols

    def parse(self, text: str) -> 'Polynomial':
        return parse_poly(self, text)


class Polynomial:
    """
    Immutable sparse polynomial.

    terms maps exponent tuples to nonzero raw field values, kept in
    descending order under ring.order.
    """

    __slots__ = ('ring', 'terms', '_hash')

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Value], _sorted: bool = False,
                 _normalized: bool = False):
        self.ring = ring
        if not _normalized:
            field = ring.field
            terms = {m: field.convert(c) for m, c in terms.items()}
            terms = {m: c for m, c in terms.items() if c != 0}
        if not _sorted and len(terms) > 1:
            key = ring.order.key
            terms = {m: terms[m] for m in sorted(terms, key=key, reverse=True)}
        self.terms: Dict[Monomial, Value] = dict(terms)
        self._hash = None

    @classmethod
    def from_raw(cls, ring: Ring, terms: Mapping[Monomial, Value]) -> 'Polynomial':
        """Wrap already-canonical nonzero raw values"""
        return cls(ring, terms, _normalized=True)

    # Basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial"""
        return max((sum(m) for m in self.terms), default=-1)

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Monomial:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading monomial")
        if order is None or order == self.ring.order:
            return next(iter(self.terms))
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> Value:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: Optional[MonomialOrder] = None) -> 'Polynomial':
        if not self.terms:
            return self
        field = self.ring.field
        inv = field.inv(self.leading_coefficient(order))
        if field.is_one(inv):
            return self
        return Polynomial(self.ring, {m: field.mul(c, inv) for m, c in self.terms.items()},
                          _sorted=True, _normalized=True)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> List[int]:
        """Indices of the variables that occur"""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def variable_names(self) -> List[str]:
        return [self.ring.variables[i] for i in self.variables()]

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self.terms), default=-1)

    def content_monomial(self) -> Monomial:
        """Largest monomial dividing every term"""
        if not self.terms:
            return self.ring.zero_monomial()
        monomials = iter(self.terms)
        gcd = list(next(monomials))
        for m in monomials:
            gcd = [min(a, b) for a, b in zip(gcd, m)]
        return tuple(gcd)

    def coefficient(self, monomial: Monomial) -> Value:
        return self.terms.get(monomial, self.ring.field.zero)

    # Arithmetic

    def _check(self, other: 'Polynomial'):
        if self.ring != other.ring:
            raise RingMismatchError(f"Ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other) -> 'Polynomial':
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> 'Polynomial':
        other = self._lift(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(terms.get(m, field.zero), c)
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.ring, terms, _normalized=True)

    __radd__ = __add__

    def __neg__(self) -> 'Polynomial':
        field = self.ring.field
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self.terms.items()},
                          _sorted=True, _normalized=True)

    def __sub__(self, other) -> 'Polynomial':
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'Polynomial':
        return (-self) + other

    def __mul__(self, other) -> 'Polynomial':
        other = self._lift(other)
        if other is NotImplemented:
            return other
        field = self.ring.field
        terms: Dict[Monomial, Value] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = field.add(terms.get(m, field.zero), field.mul(c1, c2))
                if s == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return Polynomial(self.ring, terms, _normalized=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Polynomial':
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"Exponent must be a nonnegative integer, got {k}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_term(self, monomial: Monomial, coeff: Value) -> 'Polynomial':
        field = self.ring.field
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(m, monomial)): field.mul(c, coeff)
                                      for m, c in self.terms.items()}, _sorted=True, _normalized=True)

    def scale(self, coeff: Value) -> 'Polynomial':
        return self.mul_term(self.ring.zero_monomial(), coeff)

    def divide_monomial(self, monomial: Monomial) -> 'Polynomial':
        terms = {}
        for m, c in self.terms.items():
            q = tuple(a - b for a, b in zip(m, monomial))
            if min(q, default=0) < 0:
                raise ValueError("Monomial does not divide every term")
            terms[q] = c
        return Polynomial(self.ring, terms, _sorted=True, _normalized=True)

    # Comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self.terms.items())))
        return self._hash

    # Ring maps

    def substitute(self, images: Mapping[str, 'Polynomial'], target: Optional[Ring] = None) -> 'Polynomial':
        """
        Ring homomorphism: each variable goes to its image, unmapped variables
        go to the same-named variable of the target ring.
        """
        if target is None:
            rings = {img.ring for img in images.values()}
            if len(rings) > 1:
                raise RingMismatchError("Substitution images live in different rings")
            target = rings.pop() if rings else self.ring
        for name, img in images.items():
            if img.ring != target:
                raise RingMismatchError(f"Image of {name} is not in the target ring")
        if target.field != self.ring.field:
            raise RingMismatchError("Substitution cannot change the coefficient field")
        var_images: List[Polynomial] = []
        for name in self.ring.variables:
            if name in images:
                var_images.append(images[name])
            elif target.has_var(name):
                var_images.append(target.var(name))
            else:
                var_images.append(None)
        powers: Dict[Tuple[int, int], Polynomial] = {}
        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(Scalar(c, target.field))
            for i, e in enumerate(m):
                if not e:
                    continue
                if var_images[i] is None:
                    raise RingMismatchError(f"Variable {self.ring.variables[i]} has no image in {target}")
                if (i, e) not in powers:
                    powers[(i, e)] = var_images[i] ** e
                term = term * powers[(i, e)]
            result = result + term
        return result

    def embed(self, ring: Ring) -> 'Polynomial':
        """Same polynomial in a ring with (a superset of) the used variables"""
        if ring == self.ring and ring.order == self.ring.order:
            return self
        if ring.field != self.ring.field:
            raise RingMismatchError("Cannot embed across coefficient fields")
        positions = []
        for i in self.variables():
            name = self.ring.variables[i]
            if name not in ring.index:
                raise RingMismatchError(f"Variable {name} does not exist in {ring}")
            positions.append((i, ring.index[name]))
        terms = {}
        for m, c in self.terms.items():
            exps = [0] * ring.ngens
            for i, j in positions:
                exps[j] = m[i]
            terms[tuple(exps)] = c
        return Polynomial(ring, terms, _normalized=True)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(f: Polynomial) -> str:
    """Text form in the ideal file grammar"""
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.variables
    pieces: List[str] = []
    for m, c in f.terms.items():
        value = field.signed(c)
        negative = value < 0
        magnitude = -value if negative else value
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
        if isinstance(magnitude, Fraction) and magnitude.denominator != 1:
            coeff_text = f"{magnitude.numerator}/{magnitude.denominator}"
        else:
            coeff_text = str(int(magnitude))
        if factors and coeff_text == "1":
            body = '*'.join(factors)
        else:
            body = '*'.join([coeff_text] + factors)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return ' '.join(pieces)


def parse_poly(ring: Ring, text: str) -> Polynomial:
    """
    Parse polynomial text; accepts the flat term grammar plus parentheses.

    Raises ParseError on unknown variables, malformed exponents or literals
    without an image in the ring's field.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("Empty polynomial text")
    if not _ALLOWED_TEXT_RE.match(stripped):
        raise ParseError(f"Unexpected characters in '{stripped}'")
    for name in _NAME_TOKEN_RE.findall(stripped):
        if name not in ring.index:
            raise ParseError(f"Unknown variable '{name}' in '{stripped}'")
    symbols = ring.symbols()
    try:
        expr = parse_expr(stripped, local_dict=dict(symbols), transformations=_TRANSFORMATIONS)
        poly = Poly(expr, *[symbols[name] for name in ring.variables], domain='QQ')
    except Exception as e:
        raise ParseError(f"Cannot parse '{stripped}': {e}")
    field = ring.field
    terms = {}
    try:
        for monomial, coeff in poly.terms():
            terms[tuple(int(e) for e in monomial)] = field.convert(Fraction(int(coeff.p), int(coeff.q)))
    except FieldError as e:
        raise ParseError(f"Literal in '{stripped}' is not in {field.name}: {e}")
    return Polynomial(ring, terms, _normalized=False)


def polys(ring: Ring, texts: Iterable[str]) -> List[Polynomial]:
    return [parse_poly(ring, t) for t in texts]


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_gcd_is_one(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))
