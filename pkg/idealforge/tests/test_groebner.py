"""
Test Buchberger's algorithm, division and membership certificates
"""
import pytest
import sympy

import idealforge.groebner as groebner_module
from idealforge.config import config
from idealforge.errors import BudgetExceeded
from idealforge.groebner import budget, groebner, is_groebner, member_certificate, reduce, run_cap
from idealforge.ideals import Ideal
from idealforge.poly import LEX, Ring, format_poly, parse_poly
from idealforge.scalars import prime_field


class TestGroebner:
    """Reduced bases over QQ and GF(p)"""

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])
        self.gens = [parse_poly(self.ring, "x^2 - y"), parse_poly(self.ring, "x*y - 1")]

    def test_reduced_basis(self):
        gb = groebner(self.gens)
        assert {format_poly(g) for g in gb.basis} == {"x^2 - y", "x*y - 1", "y^2 - x"}
        assert is_groebner(gb.basis)
        assert not is_groebner(self.gens)

    def test_basis_is_monic(self):
        scaled = [parse_poly(self.ring, "2*x^2 - 2*y"), parse_poly(self.ring, "-3*x*y + 3")]
        gb = groebner(scaled)
        assert all(g.leading_coefficient(gb.order) == 1 for g in gb.basis)
        assert {format_poly(g) for g in gb.basis} == {format_poly(g) for g in groebner(self.gens).basis}

    def test_unit_ideal(self):
        gb = groebner([parse_poly(self.ring, "x"), parse_poly(self.ring, "x - 1")])
        assert gb.is_unit()
        assert gb.contains(parse_poly(self.ring, "y^5 + 3"))

    def test_zero_ideal(self):
        gb = groebner([self.ring.zero()], ring=self.ring)
        assert gb.is_zero()
        assert not gb.contains(self.ring.var('x'))

    def test_lex_basis_eliminates(self):
        gb = groebner(self.gens, LEX)
        assert any(g.variable_names() == ['y'] for g in gb.basis)

    def test_prime_field(self):
        ring = Ring.custom(['x', 'y'], prime_field(5))
        gb = groebner([parse_poly(ring, "x^5 - x"), parse_poly(ring, "2*y + x")])
        assert len(gb) == 2
        assert gb.contains(parse_poly(ring, "x^5 - x"))

    def test_matches_sympy(self):
        ring = Ring.custom(['x', 'y', 'z'])
        texts = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]
        ours = groebner([parse_poly(ring, t) for t in texts])
        x, y, z = sympy.symbols('x y z')
        reference = sympy.groebner([sympy.sympify(t.replace('^', '**')) for t in texts], x, y, z, order='grevlex')
        theirs = [parse_poly(ring, str(g)) for g in reference.exprs]
        assert len(ours) == len(theirs)
        assert all(ours.contains(g) for g in theirs)
        assert all(groebner(theirs).contains(g) for g in ours.basis)


class TestDivision:

    def test_quotients_recombine(self):
        ring = Ring.custom(['x', 'y'])
        f = parse_poly(ring, "x^3*y + x*y^2 + 2")
        G = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        remainder, quotients = reduce(f, G)
        total = remainder
        for q, g in zip(quotients, G):
            total = total + q * g
        assert total == f


class TestCertificates:

    def setup_method(self):
        self.ring = Ring.custom(['x', 'y'])
        self.ideal = Ideal.from_texts(self.ring, ["x^2 - y", "x*y - 1"])

    def test_member(self):
        certificate = member_certificate(self.ideal, parse_poly(self.ring, "x^3 - 1"))
        assert certificate is not None
        assert certificate.verify()
        assert certificate.max_coeff_degree >= 0
        assert certificate.to_dict()['target'] == "x^3 - 1"

    def test_non_member(self):
        assert member_certificate(self.ideal, parse_poly(self.ring, "x + 1")) is None

    def test_generator_list(self):
        certificate = member_certificate(list(self.ideal.generators), parse_poly(self.ring, "x^2*y - y^2"))
        assert certificate is not None
        assert certificate.verify(self.ideal.generators)


class TestBudget:

    def test_expired_budget_raises(self):
        ring = Ring.custom(['x', 'y'])
        gens = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        with pytest.raises(BudgetExceeded):
            with budget(-1):
                groebner(gens)

    def test_no_budget(self):
        ring = Ring.custom(['x', 'y'])
        with budget(None):
            assert len(groebner([parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")])) == 3

    def test_nested_budget_keeps_smaller_cap(self):
        ring = Ring.custom(['x', 'y'])
        gens = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        with pytest.raises(BudgetExceeded):
            with budget(-1):
                with budget(3600):
                    groebner(gens)
        with budget(5):
            with budget(None):
                assert run_cap() == 5

    def test_default_cap_from_config(self, monkeypatch):
        monkeypatch.setattr(config, 'budget_seconds', 42.0)
        assert run_cap() == 42.0
        with budget(7):
            assert run_cap() == 7

    def test_cap_applies_to_each_run(self, monkeypatch):
        ring = Ring.custom(['x', 'y'])
        gens = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        now = [0.0]
        monkeypatch.setattr(groebner_module, '_clock', lambda: now[0])
        with budget(1.0):
            for _ in range(3):
                assert len(groebner(gens)) == 3
                now[0] += 0.6

    def test_slow_run_exceeds_cap(self, monkeypatch):
        ring = Ring.custom(['x', 'y'])
        gens = [parse_poly(ring, "x^2 - y"), parse_poly(ring, "x*y - 1")]
        now = [0.0]

        def clock():
            now[0] += 2.0
            return now[0]

        monkeypatch.setattr(groebner_module, '_clock', clock)
        with pytest.raises(BudgetExceeded):
            with budget(1.0):
                groebner(gens)
