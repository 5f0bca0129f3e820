"""
Randomized algebraic properties of fields, ring maps, bases and ideal operations
"""
from fractions import Fraction

import numpy as np
import pytest

from idealforge.checks.sampling import random_ideal, random_poly, sample_ring
from idealforge.family.generators import FamilyParams, build_K, build_Kl, eval_map, family_builder
from idealforge.groebner import groebner
from idealforge.ideals import (Ideal, eliminate, ideal_contains, ideal_equal, ideal_product, principal,
                               quotient_by_poly)
from idealforge.poly import GREVLEX, LEX, Ring, block_order, format_poly
from idealforge.scalars import prime_field, rationals

GF = prime_field(32003)


def random_value(rng, field):
    if field.is_prime:
        return field.convert(int(rng.integers(0, field.p)))
    return Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 21)))


class TestFieldAxioms:

    @pytest.mark.parametrize("field", [rationals(), prime_field(13), GF], ids=lambda f: f.name)
    def test_axioms_on_random_triples(self, field):
        rng = np.random.default_rng(11)
        zero, one = field.convert(0), field.convert(1)
        for _ in range(1000):
            a, b, c = (random_value(rng, field) for _ in range(3))
            assert field.add(a, b) == field.add(b, a)
            assert field.mul(a, b) == field.mul(b, a)
            assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
            assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
            assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
            assert field.add(a, field.neg(a)) == zero
            assert field.sub(a, b) == field.add(a, field.neg(b))
            if a != zero:
                assert field.mul(a, field.inv(a)) == one
                assert field.div(field.mul(a, b), a) == b


class TestSubstitution:

    def test_substitution_is_a_ring_homomorphism(self):
        rng = np.random.default_rng(5)
        ring = sample_ring()
        for _ in range(200):
            f = random_poly(rng, ring)
            g = random_poly(rng, ring)
            images = {name: random_poly(rng, ring) for name in ring.variables}
            assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)
            assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)
        assert ring.one().substitute(images) == ring.one()


class TestEvaluationMapProperties:

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("d", [2, 3])
    def test_long_target_maps_to_short_target(self, n, d):
        params = FamilyParams(n, d)
        long_target = family_builder(params, long=True).long_target()
        assert eval_map(long_target, params) == family_builder(params).target()

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("d", [2, 3])
    def test_each_long_generator_maps_to_its_short_generator(self, n, d):
        params = FamilyParams(n, d)
        images = [eval_map(G, params) for G in build_Kl(params).generators]
        nonzero = [g for g in images if not g.is_zero()]
        # the relations defining s_r and f_r vanish
        assert len(images) - len(nonzero) == 2 * (n - 1)
        assert nonzero == list(build_K(params).generators)


class TestBlockOrder:

    def setup_method(self):
        self.ring = Ring.custom(['t', 'x', 'y', 'z'], GF)

    def test_elimination_property(self):
        rng = np.random.default_rng(3)
        order = block_order(1)
        for _ in range(30):
            gb = groebner(random_ideal(rng, self.ring, max_gens=3).generators, order)
            for g in gb.basis:
                if g.leading_monomial(order)[0] == 0:
                    assert g.degree_in(0) == 0

    def test_eliminate_lands_in_the_ideal(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            I = random_ideal(rng, self.ring, max_gens=3)
            E = eliminate(I, ['t'])
            assert all(g.degree_in(0) == 0 for g in E.generators)
            assert ideal_contains(I, E)


class TestGroebnerProperties:

    def setup_method(self):
        self.ring = sample_ring(GF)

    def test_idempotence(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            gb = groebner(random_ideal(rng, self.ring).generators, ring=self.ring)
            again = groebner(gb.basis, ring=self.ring)
            assert sorted(format_poly(g) for g in again.basis) == sorted(format_poly(g) for g in gb.basis)

    @pytest.mark.slow
    def test_membership_agrees_under_lex_and_grevlex(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            I = random_ideal(rng, self.ring)
            members = [random_poly(rng, self.ring) * g for g in I.generators]
            candidates = [random_poly(rng, self.ring), sum(members[1:], members[0])]
            lex = groebner(I.generators, LEX, ring=self.ring)
            grevlex = groebner(I.generators, GREVLEX, ring=self.ring)
            for f in candidates:
                assert lex.contains(f) == grevlex.contains(f)
            assert lex.contains(candidates[1])


class TestIdealProperties:

    def setup_method(self):
        self.ring = sample_ring(GF)

    def test_quotient_adjunction(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            I = random_ideal(rng, self.ring)
            f = random_poly(rng, self.ring)
            Q = quotient_by_poly(I, f)
            assert ideal_contains(I, ideal_product(principal(f), Q))
            assert ideal_contains(Q, I)

    def test_equality_is_an_equivalence(self):
        rng = np.random.default_rng(13)
        x = self.ring.var('x')
        originals = [random_ideal(rng, self.ring, max_gens=2) for _ in range(10)]
        copies = [Ideal(self.ring, [3 * g for g in reversed(I.generators)] + [x * I.generators[0]])
                  for I in originals]
        pool = originals + copies
        size = len(pool)
        eq = [[ideal_equal(pool[i], pool[j]) for j in range(size)] for i in range(size)]
        for i in range(size):
            assert eq[i][i]
            for j in range(size):
                assert eq[i][j] == eq[j][i]
                if eq[i][j]:
                    assert all(eq[i][k] == eq[j][k] for k in range(size))
        assert all(eq[k][k + 10] for k in range(10))
