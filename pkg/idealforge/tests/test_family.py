"""
Test the K(n, d) family generators, auxiliary ideals and the evaluation map
"""
import pytest

from idealforge.errors import FamilyError
from idealforge.family.generators import (FamilyBuilder, FamilyParams, build_aux, build_K, build_Kl, build_shifted,
                                          build_sublevels, eval_map, family_builder)
from idealforge.poly import Ring
from idealforge.scalars import rationals


class TestFamilyParams:

    def test_bounds(self):
        assert FamilyParams(2, 2).to_dict() == {'n': 2, 'd': 2}
        with pytest.raises(FamilyError):
            FamilyParams(1, 2)
        with pytest.raises(FamilyError):
            FamilyParams(2, 1)


class TestGenerators:
    """Generator counts and shapes"""

    def test_short_family_sizes(self):
        assert len(build_K(FamilyParams(2, 2))) == 20
        assert len(build_K(FamilyParams(2, 3))) == 20
        assert len(build_K(FamilyParams(3, 2))) == 28

    def test_long_family_sizes(self):
        for n in (2, 3, 4):
            assert len(build_Kl(FamilyParams(n, 2))) == 10 * n + 2

    def test_long_family_degree(self):
        for d in (2, 3):
            assert build_Kl(FamilyParams(3, d)).max_degree() <= d + 5

    def test_level_split(self):
        M, N, L = build_sublevels(FamilyParams(2, 2))
        assert len(M) == 15
        assert len(N) == 5
        assert L.is_zero()

    def test_first_generator(self):
        K = build_K(FamilyParams(2, 3), rationals())
        assert str(K.generators[0]) == "b01*b03^3 - b02^3*b04"

    def test_literal_reading_at_two_levels(self):
        with pytest.raises(FamilyError):
            family_builder(FamilyParams(2, 2), literal=True).K()

    def test_builder_needs_variables(self):
        with pytest.raises(FamilyError):
            FamilyBuilder(Ring.short(2), 3, 2)

    def test_shifted_family(self):
        K1, M1, N1, L1 = build_shifted(FamilyParams(3, 2))
        assert len(K1) == 20
        assert all(not name.startswith('b0') for g in K1.generators for name in g.variable_names())
        assert M1.name == 'M1'
        with pytest.raises(FamilyError):
            family_builder(FamilyParams(2, 2)).shifted()


class TestEvaluationMap:

    def test_long_target_maps_to_short_target(self):
        for n in (2, 3):
            params = FamilyParams(n, 2)
            long_target = family_builder(params, long=True).long_target()
            assert eval_map(long_target, params) == family_builder(params).target()

    def test_long_generators_map_into_short_family(self):
        params = FamilyParams(2, 2)
        image = eval_map(build_Kl(params), params)
        assert set(image.generators) == set(build_K(params).generators)

    def test_long_target_needs_long_ring(self):
        with pytest.raises(FamilyError):
            family_builder(FamilyParams(2, 2)).long_target()


class TestAuxiliaryIdeals:

    def setup_method(self):
        self.aux = build_aux(FamilyParams(3, 2))

    def test_names(self):
        assert set(self.aux) == {'C1', 'C2', 'C3', 'D1', 'D2', 'D3',
                                 'B0,0', 'B0,1', 'B0,2', 'B1,1', 'B1,2', 'B2,2'}

    def test_top_level_is_zero(self):
        assert self.aux['C3'].is_zero()
        assert self.aux['D3'].is_zero()

    def test_sizes(self):
        assert len(self.aux['C1']) == 4
        assert len(self.aux['D2']) == 3
        assert len(self.aux['B0,2']) == 12
        assert str(self.aux['B1,1'].generators[0]) == "-b11 + 1"

    def test_out_of_range(self):
        fam = family_builder(FamilyParams(2, 2))
        with pytest.raises(FamilyError):
            fam.C(3)
        with pytest.raises(FamilyError):
            fam.B(0, 2)
