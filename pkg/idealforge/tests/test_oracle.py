"""
Test degree-bounded span linear algebra
"""
from fractions import Fraction

import pytest

from idealforge.errors import GuardExceeded
from idealforge.oracle import (certificate_unknowns, count_monomials, monomials_up_to, solve_certificate,
                               solve_combination, span_contains, span_intersection, truncated_span)
from idealforge.poly import Ring, parse_poly
from idealforge.scalars import prime_field


class TestSpans:
    """Truncated spans and linear algebra over them"""

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])
        self.x = self.ring.var('x')
        self.y = self.ring.var('y')

    def test_monomial_counts(self):
        assert len(monomials_up_to(2, 2)) == count_monomials(2, 2) == 6
        assert count_monomials(3, -1) == 0

    def test_truncated_span(self):
        span = truncated_span([self.x], 2)
        assert len(span) == 3
        assert parse_poly(self.ring, "x*y") in span

    def test_span_guard(self):
        with pytest.raises(GuardExceeded):
            truncated_span([self.x], 5, max_unknowns=2)

    def test_solve_combination(self):
        target = parse_poly(self.ring, "2*x - 3*y")
        assert solve_combination([self.x, self.y], target) == [Fraction(2), Fraction(-3)]
        assert solve_combination([self.x], target) is None

    def test_span_contains(self):
        assert span_contains([self.x, self.y], self.x + self.y)
        assert not span_contains([self.x, self.y], self.x ** 2)
        assert span_contains([], self.ring.zero())

    def test_span_intersection(self):
        meet = span_intersection([self.x, self.y], [self.x + self.y, self.x ** 2])
        assert len(meet) == 1
        assert span_contains([self.x + self.y], meet[0])

    def test_prime_field_solution(self):
        ring = Ring.custom(['x', 'y'], prime_field(7))
        target = parse_poly(ring, "3*x + 5*y")
        assert solve_combination([ring.var('x'), ring.var('y')], target) == [3, 5]


class TestCertificateSolve:

    def test_minimal_cofactors(self):
        ring = Ring.custom(['x', 'y'])
        gens = [ring.var('x'), ring.var('y')]
        target = parse_poly(ring, "x*y")
        assert solve_certificate(gens, target, 0) is None
        cofactors = solve_certificate(gens, target, 1)
        assert cofactors is not None
        assert cofactors[0] * gens[0] + cofactors[1] * gens[1] == target
        assert certificate_unknowns(gens, 1) == 6
