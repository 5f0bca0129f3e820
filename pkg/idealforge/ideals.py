"""
Ideal algebra on top of Gröbner bases

Sums and products work on generators; intersections, quotients and
elimination go through block elimination orders on an extended ring.
"""
import re
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import factorint, integer_nthroot

from .config import config
from .errors import DivisionByZeroError, GuardExceeded, ParseError, RingMismatchError, SaturationLimitError
from .groebner import Certificate, ReducedGB, groebner, reduce
from .monitoring import monitoring
from .oracle import certificate_unknowns, solve_certificate
from .poly import (GREVLEX, MonomialOrder, Polynomial, Ring, RingSpec, block_order, format_poly,
                   parse_poly)
from .scalars import Field, rationals

logger = monitoring.get_logger(__name__)

_RING_HEADER_RE = re.compile(r'^\s*ring\s*:\s*(.*)$')


class Ideal:
    """
    Finite generator list with cached reduced Gröbner bases.

    Generators are nonzero and deduplicated; the cache is write-once per
    (order, transform) key.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = (), name: Optional[str] = None):
        self.ring = ring
        self.name = name
        seen = set()
        gens: List[Polynomial] = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"Generator {g} is not in {ring}")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb_cache: Dict[Tuple[str, bool], ReducedGB] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_texts(cls, ring: Ring, texts: Iterable[str], name: Optional[str] = None) -> 'Ideal':
        return cls(ring, [parse_poly(ring, t) for t in texts], name)

    @classmethod
    def zero(cls, ring: Ring) -> 'Ideal':
        return cls(ring, ())

    @classmethod
    def unit(cls, ring: Ring) -> 'Ideal':
        return cls(ring, [ring.one()])

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"Ideal({label}{len(self.generators)} generators in {self.ring.ngens} variables)"

    def __add__(self, other: 'Ideal') -> 'Ideal':
        return ideal_sum(self, other)

    def __mul__(self, other: 'Ideal') -> 'Ideal':
        return ideal_product(self, other)

    def __and__(self, other: 'Ideal') -> 'Ideal':
        return ideal_intersect(self, other)

    def named(self, name: str) -> 'Ideal':
        ideal = Ideal(self.ring, self.generators, name)
        ideal._gb_cache = self._gb_cache
        ideal._lock = self._lock
        return ideal

    def max_degree(self) -> int:
        return max((g.total_degree() for g in self.generators), default=-1)

    def is_zero(self) -> bool:
        return not self.generators

    def groebner_basis(self, order: Optional[MonomialOrder] = None, with_transform: bool = False) -> ReducedGB:
        order = order or self.ring.order
        key = (str(order), with_transform)
        with self._lock:
            cached = self._gb_cache.get(key)
            if cached is None and not with_transform:
                cached = self._gb_cache.get((str(order), True))
        if cached is not None:
            return cached
        gb = groebner(self.generators, order, with_transform=with_transform, ring=self.ring)
        with self._lock:
            return self._gb_cache.setdefault(key, gb)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.groebner_basis().reduce(f)

    def contains(self, f: Polynomial) -> bool:
        return self.groebner_basis().contains(f)

    def is_unit(self) -> bool:
        return self.groebner_basis().is_unit()

    def embed(self, ring: Ring) -> 'Ideal':
        return Ideal(ring, [g.embed(ring) for g in self.generators], self.name)

    def substitute(self, images: Dict[str, Polynomial], target: Optional[Ring] = None) -> 'Ideal':
        target = target or self.ring
        return Ideal(target, [g.substitute(images, target) for g in self.generators], self.name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'ring': list(self.ring.variables),
            'field': self.ring.field.name,
            'generators': len(self.generators),
            'max_degree': self.max_degree(),
        }


def _same_ring(*ideals: Ideal) -> Ring:
    ring = ideals[0].ring
    for ideal in ideals[1:]:
        if ideal.ring != ring:
            raise RingMismatchError(f"Ideals live in different rings: {ring} vs {ideal.ring}")
    return ring


def ideal_sum(*ideals: Ideal) -> Ideal:
    """Generators concatenated, deduplicated"""
    ring = _same_ring(*ideals)
    return Ideal(ring, [g for ideal in ideals for g in ideal.generators])


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, [f * g for f in I.generators for g in J.generators])


def principal(f: Polynomial) -> Ideal:
    return Ideal(f.ring, [f])


def _elimination_ring(ring: Ring, front: Sequence[str], rest: Sequence[str]) -> Ring:
    return Ring(RingSpec.custom(tuple(front) + tuple(rest)), ring.field, block_order(len(front)))


def _free_of_front(g: Polynomial, k: int) -> bool:
    return all(not any(m[:k]) for m in g.terms)


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    """Eliminate t from t*I + (1 - t)*J"""
    ring = _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    if I is J:
        return I
    t = ring.fresh_name('t')
    ext = _elimination_ring(ring, [t], ring.variables)
    tv = ext.var(t)
    gens = [tv * g.embed(ext) for g in I.generators]
    gens += [(1 - tv) * h.embed(ext) for h in J.generators]
    gb = groebner(gens, ext.order, ring=ext)
    return Ideal(ring, [g.embed(ring) for g in gb.basis if _free_of_front(g, 1)])


def _exact_divide(w: Polynomial, f: Polynomial) -> Polynomial:
    remainder, quotients = reduce(w, [f])
    if not remainder.is_zero():
        raise ValueError(f"{format_poly(f)} does not divide {format_poly(w)}")
    return quotients[0]


def quotient_by_poly(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = (I ∩ (f)) / f"""
    if f.ring != I.ring:
        raise RingMismatchError("Divisor polynomial lives in a different ring")
    if f.is_zero():
        raise DivisionByZeroError("Colon by the zero polynomial")
    if f.is_constant() or I.is_zero():
        return I
    meet = ideal_intersect(I, principal(f))
    return Ideal(I.ring, [_exact_divide(w, f) for w in meet.generators])


def ideal_quotient(I: Ideal, J: Union[Ideal, Polynomial, Sequence[Polynomial]]) -> Ideal:
    """
    Colon ideal.

    J may be a polynomial, an ideal (intersection of the colons by its
    generators) or a list of factors (chained colons by the product).
    """
    if isinstance(J, Polynomial):
        return quotient_by_poly(I, J)
    if isinstance(J, Ideal):
        _same_ring(I, J)
        if J.is_zero():
            raise DivisionByZeroError("Colon by the zero ideal")
        result: Optional[Ideal] = None
        for g in J.generators:
            part = quotient_by_poly(I, g)
            result = part if result is None else ideal_intersect(result, part)
        return result
    factors = list(J)
    if not factors:
        return I
    result = I
    for f in factors:
        result = quotient_by_poly(result, f)
    return result


def saturate(I: Ideal, f: Polynomial, cap: Optional[int] = None) -> Ideal:
    """Iterated colon I : f until it stabilizes"""
    cap = cap or config.saturation_cap
    current = I
    for step in range(cap):
        following = quotient_by_poly(current, f)
        if ideal_equal(following, current):
            logger.debug("Saturation stabilized", context={'steps': step + 1})
            return following
        current = following
    raise SaturationLimitError(f"Saturation by {format_poly(f)} did not stabilize within {cap} steps")


def eliminate(I: Ideal, variables: Iterable[str]) -> Ideal:
    """I ∩ subring without the given variables, kept in I's ring"""
    ring = I.ring
    names = list(dict.fromkeys(variables))
    for name in names:
        if name not in ring.index:
            raise ParseError(f"Unknown variable '{name}' in ring {ring.name}")
    if not names:
        return I
    rest = [v for v in ring.variables if v not in names]
    ext = _elimination_ring(ring, names, rest)
    gb = groebner([g.embed(ext) for g in I.generators], ext.order, ring=ext)
    return Ideal(ring, [g.embed(ring) for g in gb.basis if _free_of_front(g, len(names))])


@dataclass
class Witness:
    """A generator on one side whose normal form by the other side is nonzero"""
    generator: Polynomial
    side: str
    normal_form: Polynomial

    def to_dict(self) -> Dict[str, str]:
        return {
            'generator': format_poly(self.generator),
            'side': self.side,
            'normal_form': format_poly(self.normal_form),
        }


def ideal_contains_witness(I: Ideal, J: Ideal, side: str = 'right',
                           order: Optional[MonomialOrder] = None) -> Optional[Witness]:
    """First generator of J outside I, or None when J ⊆ I"""
    _same_ring(I, J)
    gb = I.groebner_basis(order)
    for g in J.generators:
        nf = gb.reduce(g)
        if not nf.is_zero():
            return Witness(g, side, nf)
    return None


def ideal_contains(I: Ideal, J: Ideal) -> bool:
    """J ⊆ I"""
    return ideal_contains_witness(I, J) is None


EQUAL_CACHE_SIZE = 256

_equal_cache: 'OrderedDict[tuple, Optional[Witness]]' = OrderedDict()
_equal_lock = threading.Lock()


def ideal_equal_witness(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> Optional[Witness]:
    """None when I = J, else a generator of one side outside the other"""
    ring = _same_ring(I, J)
    order = order or ring.order
    key = (ring, I.generators, J.generators, str(order))
    with _equal_lock:
        if key in _equal_cache:
            _equal_cache.move_to_end(key)
            return _equal_cache[key]
    witness = ideal_contains_witness(I, J, 'right', order) or ideal_contains_witness(J, I, 'left', order)
    with _equal_lock:
        _equal_cache[key] = witness
        _equal_cache.move_to_end(key)
        while len(_equal_cache) > EQUAL_CACHE_SIZE:
            _equal_cache.popitem(last=False)
    return witness


def ideal_equal(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    return ideal_equal_witness(I, J, order) is None


def radical_member(I: Ideal, f: Polynomial) -> bool:
    """1 ∈ I + (1 - u*f) in the ring extended by u"""
    ring = I.ring
    if f.ring != ring:
        raise RingMismatchError("Polynomial lives in a different ring")
    if f.is_zero():
        return True
    u = ring.fresh_name('u')
    ext = Ring(RingSpec.custom((u,) + ring.variables), ring.field, GREVLEX)
    gens = [g.embed(ext) for g in I.generators] + [1 - ext.var(u) * f.embed(ext)]
    return groebner(gens, GREVLEX, ring=ext).is_unit()


def min_degree_certificate(I: Ideal, f: Polynomial, max_degree: int,
                           max_unknowns: Optional[int] = None) -> Optional[Tuple[int, Certificate]]:
    """
    Smallest D <= max_degree with f = sum(c_i * g_i), deg c_i <= D, found
    by exact linear algebra, with one witness.

    Raises GuardExceeded instead of truncating when the system is too large.
    """
    limit = max_unknowns or config.max_unknowns
    gens = list(I.generators)
    if f.is_zero():
        return 0, Certificate(f, tuple(gens), [f.ring.zero() for _ in gens])
    if not gens:
        return None
    for degree in range(max_degree + 1):
        unknowns = certificate_unknowns(gens, degree)
        if unknowns > limit:
            raise GuardExceeded(f"Degree {degree} certificate needs {unknowns} unknowns, limit {limit}")
        coefficients = solve_certificate(gens, f, degree)
        if coefficients is not None:
            return degree, Certificate(f, tuple(gens), coefficients)
    return None


class PrimeStatus(Enum):
    PRIME = "Prime"
    NOT_PRIME = "NotPrime"
    UNKNOWN = "Unknown"


@dataclass
class PrimalityVerdict:
    status: PrimeStatus
    reduction: List[Tuple[str, str]] = field(default_factory=list)
    residual: List[Polynomial] = field(default_factory=list)
    reason: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status.value,
            'reduction': [{'variable': v, 'image': img} for v, img in self.reduction],
            'residual': [format_poly(g) for g in self.residual],
            'reason': self.reason,
        }


def _peelable(g: Polynomial) -> Optional[int]:
    """
    Index of a variable x with g = c*x + h and x absent from h; the
    lowest such index, or None.
    """
    counts: Dict[int, int] = {}
    linear: Dict[int, bool] = {}
    for m in g.terms:
        for i, e in enumerate(m):
            if e:
                counts[i] = counts.get(i, 0) + 1
                linear[i] = (e == 1 and sum(m) == 1)
    for i in sorted(counts):
        if counts[i] == 1 and linear[i]:
            return i
    return None


def _is_qth_power(field: Field, value, q: int) -> bool:
    if field.is_prime:
        p = field.p
        return pow(value, (p - 1) // gcd(q, p - 1), p) == 1
    if value < 0 and q % 2 == 0:
        return False
    num, exact_num = integer_nthroot(abs(value.numerator), q)
    den, exact_den = integer_nthroot(value.denominator, q)
    return exact_num and exact_den


def _classify_single(g: Polynomial) -> Tuple[PrimeStatus, str]:
    ring = g.ring
    field = ring.field
    content = g.content_monomial()
    if g.is_monomial():
        if g.total_degree() == 0:
            return PrimeStatus.NOT_PRIME, "unit ideal"
        return PrimeStatus.NOT_PRIME, f"monomial {format_poly(g)} of degree {g.total_degree()}"
    if any(content):
        return PrimeStatus.NOT_PRIME, f"{format_poly(g)} has a monomial factor"
    if len(g) != 2:
        return PrimeStatus.UNKNOWN, f"{format_poly(g)} is not a certified shape"
    (m1, c1), (m2, c2) = list(g.terms.items())
    lam = field.neg(field.div(c2, c1))
    exponent_gcd = 0
    for e in m1 + m2:
        exponent_gcd = gcd(exponent_gcd, e)
    if exponent_gcd == 1:
        if sum(m1) == 2 and sum(m2) == 2 and all(e <= 1 for e in m1 + m2):
            return PrimeStatus.PRIME, f"quadric {format_poly(g)} on four distinct variables"
        return PrimeStatus.PRIME, f"binomial {format_poly(g)} with exponent gcd 1"
    for q in factorint(exponent_gcd):
        if _is_qth_power(field, lam, q):
            return PrimeStatus.NOT_PRIME, f"binomial {format_poly(g)} factors through a {q}-th root"
    return PrimeStatus.UNKNOWN, f"binomial {format_poly(g)} with exponent gcd {exponent_gcd}"


def is_prime_structural(P: Ideal) -> PrimalityVerdict:
    """
    Peel triangular generators c*x + h (x not in h) and pure variables,
    substituting them away, then classify what is left: nothing is Prime, one
    irreducible binomial per group of shared variables is Prime, a unit or a
    visibly reducible generator is NotPrime, anything else Unknown.
    """
    ring = P.ring
    field = ring.field
    reduction: List[Tuple[str, str]] = []
    gens = list(P.generators)
    while True:
        gb = groebner(gens, GREVLEX, ring=ring)
        if gb.is_unit():
            return PrimalityVerdict(PrimeStatus.NOT_PRIME, reduction, [], "unit ideal")
        gens = list(gb.basis)
        best = None
        for pos, g in enumerate(gens):
            i = _peelable(g)
            if i is None:
                continue
            rank = (g.total_degree(), len(g), pos)
            if best is None or rank < best[0]:
                best = (rank, pos, i)
        if best is None:
            break
        _, pos, i = best
        g = gens.pop(pos)
        name = ring.variables[i]
        x = ring.var(name)
        coeff = g.coefficient(x.leading_monomial())
        h = g - x.scale(coeff)
        image = (-h).scale(field.inv(coeff))
        reduction.append((name, format_poly(image)))
        gens = [r for r in (other.substitute({name: image}, ring) for other in gens) if r]
        if not gens:
            return PrimalityVerdict(PrimeStatus.PRIME, reduction, [], "triangular substitution leaves nothing")

    # Group the residual by shared variables
    groups: List[Tuple[set, List[Polynomial]]] = []
    for g in gens:
        support = set(g.variables())
        merged = [grp for grp in groups if grp[0] & support]
        for grp in merged:
            groups.remove(grp)
            support |= grp[0]
        members = [h for grp in merged for h in grp[1]] + [g]
        groups.append((support, members))

    reasons: List[str] = []
    status = PrimeStatus.PRIME
    for support, members in groups:
        if len(members) > 1:
            status = PrimeStatus.UNKNOWN if status is PrimeStatus.PRIME else status
            reasons.append(f"{len(members)} residual generators share variables")
            continue
        verdict, reason = _classify_single(members[0])
        reasons.append(reason)
        if verdict is PrimeStatus.NOT_PRIME:
            status = PrimeStatus.NOT_PRIME
        elif verdict is PrimeStatus.UNKNOWN and status is PrimeStatus.PRIME:
            status = PrimeStatus.UNKNOWN
    return PrimalityVerdict(status, reduction, gens, "; ".join(reasons))


# Ideal text format

def parse_ideal_text(text: str, field: Optional[Field] = None, name: Optional[str] = None) -> Ideal:
    """
    Header 'ring: <names>' then one polynomial per line; '#' starts a comment
    """
    ring: Optional[Ring] = None
    polys: List[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if ring is None:
            match = _RING_HEADER_RE.match(line)
            if not match:
                raise ParseError(f"Line {lineno}: expected 'ring: <names>' header")
            names = [n for n in re.split(r'[\s,]+', match.group(1)) if n]
            try:
                ring = Ring(RingSpec.custom(names), field or rationals())
            except ValueError as e:
                raise ParseError(f"Line {lineno}: {e}")
            continue
        polys.append(line)
    if ring is None:
        raise ParseError("Missing 'ring:' header")
    gens = []
    for line in polys:
        gens.append(parse_poly(ring, line))
    return Ideal(ring, gens, name)


def read_ideal_file(path: Union[str, Path], field: Optional[Field] = None) -> Ideal:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"Cannot read ideal file {path}: {e}")
    return parse_ideal_text(text, field, path.stem)


def write_ideal_text(I: Ideal, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"ring: {', '.join(I.ring.variables)}")
    lines.extend(format_poly(g) for g in I.generators)
    return "\n".join(lines) + "\n"
