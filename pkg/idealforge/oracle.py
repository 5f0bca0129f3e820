"""
Degree-bounded linear algebra over polynomial spans

A truncated span is the finite set of products m*g with deg(m*g) <= D. Its
linear span is a subspace of the degree-D part of the ideal; questions about
it reduce to exact row reduction with sympy's DomainMatrix.
"""
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .errors import GuardExceeded
from .poly import Monomial, Polynomial, Ring
from .scalars import Field, Value


def sympy_domain(field: Field):
    return GF(field.p) if field.is_prime else QQ


def _to_domain(domain, field: Field, value: Value):
    if field.is_prime:
        return domain(int(value))
    return domain(value.numerator, value.denominator)


def _from_domain(domain, field: Field, element) -> Value:
    s = domain.to_sympy(element)
    return field.convert(Fraction(int(s.p), int(s.q)))


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total degree <= degree, by degree then lex"""
    result: List[Monomial] = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), total):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            result.append(tuple(exps))
    return result


def count_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree, degree) if degree >= 0 else 0


def monomial_poly(ring: Ring, monomial: Monomial) -> Polynomial:
    return Polynomial.from_raw(ring, {monomial: ring.field.one})


def truncated_span(generators: Sequence[Polynomial], degree: int,
                   max_unknowns: Optional[int] = None) -> List[Polynomial]:
    """Products m*g with deg(m) + deg(g) <= degree"""
    gens = [g for g in generators if g]
    if not gens:
        return []
    ring = gens[0].ring
    size = sum(count_monomials(ring.ngens, degree - g.total_degree()) for g in gens)
    if max_unknowns is not None and size > max_unknowns:
        raise GuardExceeded(f"Truncated span of degree {degree} needs {size} vectors, limit {max_unknowns}")
    span: List[Polynomial] = []
    for g in gens:
        for m in monomials_up_to(ring.ngens, degree - g.total_degree()):
            span.append(g.mul_term(m, ring.field.one))
    return span


class _Columns:
    """Polynomials as columns of a sparse matrix over a shared monomial index"""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.field = ring.field
        self.domain = sympy_domain(ring.field)
        self.rows: Dict[Monomial, int] = {}
        self.columns: List[Polynomial] = []

    def add(self, f: Polynomial) -> int:
        for m in f.terms:
            if m not in self.rows:
                self.rows[m] = len(self.rows)
        self.columns.append(f)
        return len(self.columns) - 1

    def matrix(self, scales: Optional[Sequence[int]] = None) -> DomainMatrix:
        data: Dict[int, Dict[int, object]] = {}
        for j, f in enumerate(self.columns):
            for m, c in f.terms.items():
                if scales is not None and scales[j] < 0:
                    c = self.field.neg(c)
                data.setdefault(self.rows[m], {})[j] = _to_domain(self.domain, self.field, c)
        shape = (max(len(self.rows), 1), len(self.columns))
        return DomainMatrix(data, shape, self.domain)


def solve_combination(vectors: Sequence[Polynomial], target: Polynomial) -> Optional[List[Value]]:
    """
    Coefficients x with sum(x[i] * vectors[i]) == target, or None.
    Free unknowns are set to zero.
    """
    ring = target.ring
    if not vectors:
        return [] if target.is_zero() else None
    cols = _Columns(ring)
    for v in vectors:
        cols.add(v)
    last = cols.add(target)
    reduced, pivots = cols.matrix().rref()
    if last in pivots:
        return None
    entries = reduced.to_dok()
    solution = [ring.field.zero] * len(vectors)
    for row, col in enumerate(pivots):
        value = entries.get((row, last))
        if value is not None:
            solution[col] = _from_domain(cols.domain, ring.field, value)
    return solution


def span_contains(span: Sequence[Polynomial], f: Polynomial) -> bool:
    """True when f is a linear combination of the span"""
    if f.is_zero():
        return True
    return solve_combination(span, f) is not None


def span_intersection(span_a: Sequence[Polynomial], span_b: Sequence[Polynomial]) -> List[Polynomial]:
    """Basis of span(a) ∩ span(b)"""
    if not span_a or not span_b:
        return []
    ring = span_a[0].ring
    cols = _Columns(ring)
    for v in span_a:
        cols.add(v)
    for v in span_b:
        cols.add(v)
    scales = [1] * len(span_a) + [-1] * len(span_b)
    kernel = cols.matrix(scales).nullspace()
    rows, _ = kernel.shape
    entries = kernel.to_dok()
    result: List[Polynomial] = []
    for r in range(rows):
        total = ring.zero()
        for j, v in enumerate(span_a):
            value = entries.get((r, j))
            if value is not None:
                total = total + v.scale(_from_domain(cols.domain, ring.field, value))
        if total:
            result.append(total)
    return result


def certificate_unknowns(generators: Sequence[Polynomial], degree: int) -> int:
    """Number of unknown coefficients for cofactors of degree <= degree"""
    gens = [g for g in generators if g]
    if not gens:
        return 0
    return len(gens) * count_monomials(gens[0].ring.ngens, degree)


def solve_certificate(generators: Sequence[Polynomial], target: Polynomial,
                      degree: int) -> Optional[List[Polynomial]]:
    """Cofactors of degree <= degree expressing target, or None"""
    ring = target.ring
    monomials = monomials_up_to(ring.ngens, degree)
    vectors: List[Polynomial] = []
    owners: List[Tuple[int, Monomial]] = []
    for i, g in enumerate(generators):
        if not g:
            continue
        for m in monomials:
            vectors.append(g.mul_term(m, ring.field.one))
            owners.append((i, m))
    solution = solve_combination(vectors, target)
    if solution is None:
        return None
    coefficients: List[Dict[Monomial, Value]] = [{} for _ in generators]
    for (i, m), value in zip(owners, solution):
        if value != 0:
            coefficients[i][m] = value
    return [Polynomial(ring, c) for c in coefficients]
