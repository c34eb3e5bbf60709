"""
Test suite for Weil constant engine

格子積分と Weil 定数 γ_ψ(q)
テスト対象: src/engines/weil_engine.py
"""

import cmath
import pytest
from fractions import Fraction

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from data_structures.characters import Phase
from data_structures.errors import DomainError, NoStabilization, PrecisionExhausted
from data_structures.local_field import ExtKind, FieldConfig
from data_structures.quadratic_forms import QuadraticFormF, hyperbolic_plane, norm_form
from engines.character_engine import psi_E, standard_additive_character
from engines.weil_engine import (
    _snap_to_eighth_root, brute_force_lattice_integral, gamma_norm_form, gauss_sum,
    stabilization_scale, weil_constant, weil_lattice_integral
)


class TestGaussSum:
    """二次 Gauss 和のテスト"""

    def test_absolute_value(self):
        assert abs(gauss_sum(5, 1, 1)) == pytest.approx(5 ** 0.5)
        assert abs(gauss_sum(7, 3, 3)) == pytest.approx(7 ** 1.5)

    def test_even_exponent_is_positive(self):
        value = gauss_sum(5, 2, 2)
        assert value.real == pytest.approx(5.0)
        assert abs(value.imag) < 1e-9

    def test_table_bound(self):
        with pytest.raises(PrecisionExhausted):
            gauss_sum(3, 1, 20)


class TestQuadraticForm:
    """二次形式のテスト"""

    def test_degenerate(self):
        field = FieldConfig(p=3)
        with pytest.raises(DomainError):
            QuadraticFormF.from_values(field, [1, 0])

    def test_norm_form(self):
        field = FieldConfig(p=5, ext_kind=ExtKind.RAMIFIED_P)
        q = norm_form(field, 2)
        assert q.dimension == 2
        assert q.coefficients[0] == 2
        assert q.coefficients[1] == -10


class TestWeilConstant:
    """γ_ψ(q) のテスト"""

    def setup_method(self):
        self.field = FieldConfig(p=3)
        self.psi = standard_additive_character(self.field)

    def test_unit_coefficient(self):
        q = QuadraticFormF.from_values(self.field, [1])
        assert weil_constant(q, self.psi).phase == Phase()

    def test_uniformizer_coefficient(self):
        """p = 3 では γ(⟨3⟩)² = (-1/3) = -1"""
        q = QuadraticFormF.from_values(self.field, [3])
        gamma = weil_constant(q, self.psi)
        assert (gamma ** 2).phase == Phase.from_sign(-1)
        assert gamma.phase.order in (1, 2, 4, 8)

    def test_hyperbolic_plane(self):
        assert weil_constant(hyperbolic_plane(self.field), self.psi).close_to(1)

    def test_direct_sum(self):
        q = QuadraticFormF.from_values(self.field, [3, 2])
        q_prime = QuadraticFormF.from_values(self.field, [9, 6])
        total = weil_constant(q.direct_sum(q_prime), self.psi)
        product = weil_constant(q, self.psi) * weil_constant(q_prime, self.psi)
        assert total.close_to(product)

    def test_negation_inverts(self):
        q = QuadraticFormF.from_values(self.field, [3, 6, 1])
        product = weil_constant(q, self.psi) * weil_constant(q.negate(), self.psi)
        assert product.close_to(1)

    def test_stabilization_scale(self):
        assert stabilization_scale(QuadraticFormF.from_values(self.field, [1]), self.psi) == 1
        assert stabilization_scale(QuadraticFormF.from_values(self.field, [27]), self.psi) == 2

    def test_norm_form_unramified_trivial(self):
        """不分岐なら N は単数係数の形式で γ = 1"""
        assert gamma_norm_form(self.field, self.psi).close_to(1)

    def test_norm_form_scaling_by_non_norm(self):
        """γ(p·N) = sgn(p) γ(N) = -γ(N)（不分岐）"""
        base = gamma_norm_form(self.field, self.psi)
        scaled = gamma_norm_form(self.field, self.psi, 3)
        assert scaled.close_to(-base.value)

    def test_phase_snaps_to_eighth_root(self):
        snapped = _snap_to_eighth_root(2 * cmath.exp(2j * cmath.pi / 8))
        assert snapped.phase == Phase(Fraction(1, 8))

    def test_phase_off_eighth_roots_is_an_error(self):
        with pytest.raises(NoStabilization):
            _snap_to_eighth_root(cmath.exp(2j * cmath.pi / 10))


class TestLatticeIntegral:
    """格子積分の直接和との比較"""

    @pytest.mark.parametrize("coefficients", [[1], [3], [1, 2]])
    def test_matches_brute_force(self, coefficients):
        field = FieldConfig(p=3)
        psi = standard_additive_character(field)
        q = QuadraticFormF.from_values(field, coefficients)
        exact = weil_lattice_integral(1, q, psi)
        brute = brute_force_lattice_integral(1, coefficients, psi, depth=1)
        assert abs(exact - brute) < 1e-9

    def test_small_lattice_is_volume(self):
        """ψ が格子上で自明なら積分は体積"""
        field = FieldConfig(p=5)
        psi = standard_additive_character(field)
        q = QuadraticFormF.from_values(field, [1])
        assert weil_lattice_integral(0, q, psi) == pytest.approx(1.0)

    def test_needs_field_character(self):
        field = FieldConfig(p=5)
        q = QuadraticFormF.from_values(field, [1])
        with pytest.raises(ValueError):
            weil_lattice_integral(1, q, psi_E(standard_additive_character(field)))


if __name__ == "__main__":
    pytest.main([__file__])
