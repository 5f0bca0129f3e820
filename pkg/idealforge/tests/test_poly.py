"""
Test polynomial rings, arithmetic and the text grammar
"""
from fractions import Fraction

import pytest

from idealforge.errors import ParseError, RingMismatchError
from idealforge.poly import GREVLEX, LEX, MonomialOrder, OrderKind, Ring, format_poly, parse_poly
from idealforge.scalars import prime_field


class TestPolynomialArithmetic:
    """Arithmetic over QQ"""

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])
        self.x = self.ring.var('x')
        self.y = self.ring.var('y')

    def test_parse_format(self):
        f = parse_poly(self.ring, "x^2 - 2*x*y + 1")
        assert format_poly(f) == "x^2 - 2*x*y + 1"
        assert format_poly(parse_poly(self.ring, "x/2")) == "1/2*x"
        assert format_poly(self.ring.zero()) == "0"

    def test_parentheses(self):
        assert parse_poly(self.ring, "(x + y)^2") == parse_poly(self.ring, "x^2 + 2*x*y + y^2")

    def test_arithmetic(self):
        x, y = self.x, self.y
        assert (x + y) * (x - y) == x ** 2 - y ** 2
        assert 1 - x == -(x - 1)
        assert 2 * x == x + x
        assert (x - x).is_zero()
        assert x * Fraction(1, 2) == parse_poly(self.ring, "x/2")

    def test_degrees(self):
        f = parse_poly(self.ring, "x*y^2 + x^2 + 3")
        assert f.total_degree() == 3
        assert f.degree_in(1) == 2
        assert self.ring.zero().total_degree() == -1

    def test_leading_monomial(self):
        f = parse_poly(self.ring, "x*y^2 + x^2")
        assert f.leading_monomial() == (1, 2)
        assert f.leading_monomial(LEX) == (2, 0)

    def test_negative_power(self):
        with pytest.raises(ValueError):
            self.x ** -1

    def test_content_monomial(self):
        f = parse_poly(self.ring, "x^2*y + x*y^3")
        assert f.content_monomial() == (1, 1)


class TestParseErrors:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            parse_poly(self.ring, "x + w")

    def test_empty_text(self):
        with pytest.raises(ParseError):
            parse_poly(self.ring, "   ")

    def test_bad_characters(self):
        with pytest.raises(ParseError):
            parse_poly(self.ring, "x $ y")

    def test_literal_outside_field(self):
        ring = Ring.custom(['x'], prime_field(7))
        with pytest.raises(ParseError):
            parse_poly(ring, "x/7")


class TestPrimeFieldPolynomials:

    def test_symmetric_printing(self):
        ring = Ring.custom(['x', 'y'], prime_field(7))
        assert format_poly(parse_poly(ring, "-x")) == "-x"
        assert parse_poly(ring, "8*x") == ring.var('x')
        assert parse_poly(ring, "7*x + y") == ring.var('y')


class TestRingMaps:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])

    def test_ring_mismatch(self):
        other = Ring.custom(['x', 'z'])
        with pytest.raises(RingMismatchError):
            self.ring.var('x') + other.var('x')

    def test_substitute(self):
        f = parse_poly(self.ring, "x^2 + y")
        image = f.substitute({'x': parse_poly(self.ring, "y + 1")})
        assert image == parse_poly(self.ring, "y^2 + 3*y + 1")

    def test_substitute_into_other_ring(self):
        target = Ring.custom(['t'])
        f = parse_poly(self.ring, "x*y - 1")
        t = target.var('t')
        assert f.substitute({'x': t, 'y': t}, target) == t ** 2 - 1

    def test_embed(self):
        bigger = Ring.custom(['z', 'x', 'y'])
        f = parse_poly(self.ring, "x^2 - y")
        assert f.embed(bigger) == parse_poly(bigger, "x^2 - y")
        with pytest.raises(RingMismatchError):
            f.embed(Ring.custom(['x']))


class TestRings:

    def test_family_rings(self):
        short = Ring.short(2)
        long = Ring.long(2)
        assert short.ngens == 12
        assert short.variables[:4] == ('b01', 'b02', 'b03', 'b04')
        assert short.variables[-1] == 'c14'
        assert long.ngens == 14
        assert long.variables[:2] == ('s2', 'f2')
        assert Ring.long(3).ngens == 24

    def test_invalid_names(self):
        with pytest.raises(ValueError):
            Ring.custom(['X'])
        with pytest.raises(ValueError):
            Ring.custom(['x', 'x'])
        with pytest.raises(ValueError):
            Ring.short(1)

    def test_fresh_name(self):
        ring = Ring.custom(['u', 'x'])
        assert ring.fresh_name('u') == 'u0'
        assert ring.fresh_name('t') == 't'

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            Ring.custom(['x']).var('y')


class TestMonomialOrder:

    def test_parse(self):
        assert MonomialOrder.parse('lex') == LEX
        assert MonomialOrder.parse('GrevLex') == GREVLEX
        block = MonomialOrder.parse('block:2')
        assert block.kind is OrderKind.BLOCK
        assert block.block_split == 2
        assert str(block) == "block:2"

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            MonomialOrder.parse('block')
        with pytest.raises(ValueError):
            MonomialOrder.parse('deglex')
