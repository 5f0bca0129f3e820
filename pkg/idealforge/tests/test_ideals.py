"""
Test ideal operations, witnesses, primality verdicts and the ideal file format
"""
from collections import OrderedDict

import pytest

import idealforge.ideals as ideals_module
from idealforge.errors import DivisionByZeroError, ParseError, RingMismatchError, SaturationLimitError
from idealforge.ideals import (Ideal, PrimeStatus, eliminate, ideal_contains, ideal_contains_witness, ideal_equal,
                               ideal_equal_witness, ideal_intersect, ideal_product, ideal_quotient, ideal_sum,
                               is_prime_structural, min_degree_certificate, parse_ideal_text, principal,
                               quotient_by_poly, radical_member, read_ideal_file, saturate, write_ideal_text)
from idealforge.poly import Ring, format_poly, parse_poly
from idealforge.scalars import prime_field


class TestIdealOperations:
    """Sum, product, intersection, colon and elimination over QQ"""

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y', 'z'])
        self.x = self.ring.var('x')
        self.y = self.ring.var('y')
        self.z = self.ring.var('z')

    def ideal(self, *texts: str) -> Ideal:
        return Ideal.from_texts(self.ring, texts)

    def test_generators_are_deduplicated(self):
        I = Ideal(self.ring, [self.x, self.x, self.ring.zero(), self.y])
        assert len(I) == 2

    def test_sum_and_product(self):
        assert ideal_equal(ideal_sum(self.ideal("x"), self.ideal("y")), self.ideal("x", "y"))
        assert ideal_equal(ideal_product(self.ideal("x"), self.ideal("y", "z")), self.ideal("x*y", "x*z"))
        assert ideal_equal(self.ideal("x") + self.ideal("y"), self.ideal("y", "x"))

    def test_intersection(self):
        assert ideal_equal(ideal_intersect(self.ideal("x"), self.ideal("y")), self.ideal("x*y"))
        assert ideal_equal(self.ideal("x^2", "y") & self.ideal("x"), self.ideal("x^2", "x*y"))

    def test_quotient(self):
        assert ideal_equal(quotient_by_poly(self.ideal("x*y"), self.x), self.ideal("y"))
        assert ideal_equal(ideal_quotient(self.ideal("x^2*y"), [self.x, self.x]), self.ideal("y"))
        assert ideal_equal(ideal_quotient(self.ideal("x*y", "x*z"), self.ideal("y", "z")), self.ideal("x"))
        assert ideal_equal(ideal_quotient(self.ideal("x"), []), self.ideal("x"))

    def test_quotient_by_zero(self):
        with pytest.raises(DivisionByZeroError):
            quotient_by_poly(self.ideal("x"), self.ring.zero())

    def test_principal_meet_identity(self):
        I = self.ideal("x*y", "z^2")
        left = ideal_intersect(principal(self.x), I)
        right = ideal_product(principal(self.x), quotient_by_poly(I, self.x))
        assert ideal_equal(left, right)

    def test_saturate(self):
        assert ideal_equal(saturate(self.ideal("x^3*y"), self.x), self.ideal("y"))

    def test_saturation_cap(self):
        with pytest.raises(SaturationLimitError):
            saturate(self.ideal("x^5*y"), self.x, cap=2)

    def test_eliminate(self):
        E = eliminate(self.ideal("x - y", "y - z"), ['y'])
        assert ideal_equal(E, self.ideal("x - z"))
        assert E.ring == self.ring
        with pytest.raises(ParseError):
            eliminate(self.ideal("x"), ['w'])

    def test_ring_mismatch(self):
        other = Ideal.from_texts(Ring.custom(['x', 'y']), ["x"])
        with pytest.raises(RingMismatchError):
            ideal_sum(self.ideal("x"), other)


class TestWitnesses:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])

    def test_containment_witness(self):
        I = Ideal.from_texts(self.ring, ["x"])
        J = Ideal.from_texts(self.ring, ["x^2", "y"])
        witness = ideal_contains_witness(I, J)
        assert witness is not None
        assert witness.to_dict() == {'generator': "y", 'side': 'right', 'normal_form': "y"}
        assert ideal_contains(J, Ideal.from_texts(self.ring, ["x^2*y"]))

    def test_equality_witness_sides(self):
        small = Ideal.from_texts(self.ring, ["x*y"])
        large = Ideal.from_texts(self.ring, ["x"])
        assert ideal_equal_witness(small, large).side == 'right'
        assert ideal_equal_witness(large, small).side == 'left'
        assert ideal_equal_witness(large, Ideal.from_texts(self.ring, ["2*x"])) is None

    def test_equality_cache_is_bounded(self, monkeypatch):
        monkeypatch.setattr(ideals_module, 'EQUAL_CACHE_SIZE', 4)
        monkeypatch.setattr(ideals_module, '_equal_cache', OrderedDict())
        base = Ideal.from_texts(self.ring, ["x"])
        for k in range(1, 11):
            ideal_equal_witness(base, Ideal.from_texts(self.ring, [f"x^{k}"]))
        assert len(ideals_module._equal_cache) == 4
        newest = [key[2] for key in ideals_module._equal_cache]
        assert [format_poly(gens[0]) for gens in newest] == ["x^7", "x^8", "x^9", "x^10"]
        assert ideal_equal_witness(base, Ideal.from_texts(self.ring, ["x^10"])) is not None
        assert ideal_equal_witness(base, Ideal.from_texts(self.ring, ["x"])) is None


class TestMembership:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])

    def test_radical_member(self):
        I = Ideal.from_texts(self.ring, ["x^2", "y^3"])
        assert radical_member(I, parse_poly(self.ring, "x + y"))
        assert not radical_member(I, parse_poly(self.ring, "x + 1"))

    def test_min_degree_certificate(self):
        I = Ideal.from_texts(self.ring, ["x", "y"])
        degree, certificate = min_degree_certificate(I, parse_poly(self.ring, "x*y + y^2"), 3)
        assert degree == 1
        assert certificate.verify()
        assert min_degree_certificate(I, parse_poly(self.ring, "x + 1"), 2) is None


class TestPrimality:
    """Structural primality verdicts"""

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y', 'z', 'w'])

    def verdict(self, *texts: str):
        return is_prime_structural(Ideal.from_texts(self.ring, texts))

    def test_triangular(self):
        verdict = self.verdict("x - y^2", "z")
        assert verdict.status is PrimeStatus.PRIME
        assert ('x', 'y^2') in verdict.reduction

    def test_quadric(self):
        assert self.verdict("x*y - z*w").status is PrimeStatus.PRIME

    def test_binomial_with_root(self):
        assert self.verdict("x^2 - y^2").status is PrimeStatus.NOT_PRIME
        assert self.verdict("x^2 - 2*y^2").status is PrimeStatus.UNKNOWN

    def test_monomial_and_unit(self):
        assert self.verdict("x*y").status is PrimeStatus.NOT_PRIME
        assert self.verdict("x", "x - 1").status is PrimeStatus.NOT_PRIME

    def test_prime_field_roots(self):
        ring = Ring.custom(['x', 'y'], prime_field(7))
        squares = is_prime_structural(Ideal.from_texts(ring, ["x^2 - 2*y^2"]))
        assert squares.status is PrimeStatus.NOT_PRIME
        assert squares.to_dict()['status'] == "NotPrime"


class TestIdealFiles:

    def test_parse_text(self):
        I = parse_ideal_text("# sample\nring: x, y\nx^2 - y  # first\n\nx*y - 1\n")
        assert I.ring.variables == ('x', 'y')
        assert len(I) == 2

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_ideal_text("x + 1\n")
        with pytest.raises(ParseError):
            parse_ideal_text("ring: x\ny\n")

    def test_write_and_read(self, tmp_path):
        I = Ideal.from_texts(Ring.custom(['x', 'y']), ["x^2 - y", "x*y - 1"])
        text = write_ideal_text(I, "two generators")
        assert text == "# two generators\nring: x, y\nx^2 - y\nx*y - 1\n"
        path = tmp_path / "sample.ideal"
        path.write_text(text)
        loaded = read_ideal_file(path)
        assert loaded.name == "sample"
        assert loaded.generators == I.generators

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ParseError):
            read_ideal_file(tmp_path / "missing.ideal")
