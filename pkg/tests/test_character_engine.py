"""
Test suite for character engine

加法指標・乗法指標の評価、制限、共役双対符号、拡張の列挙
テスト対象: src/engines/character_engine.py
"""

import pytest
from fractions import Fraction

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from data_structures.characters import ConjugateDualSign, MultiplicativeCharacter, Phase, UnitComplex
from data_structures.errors import DivisionByZero
from data_structures.local_field import ExtKind, FieldConfig
from engines.character_engine import (
    characters_equal, conductor, conjugate_dual_partner, conjugate_dual_sign, eval_add, eval_mult,
    extend_character, multiply_characters, power_character, psi_E, restrict_to_F, restricted_sweep,
    sgn_character, standard_additive_character, trivial_character
)
from engines.padic_arithmetic import sgn_EF


class TestPhase:
    """Phase / UnitComplex のテスト"""

    def test_reduced_mod_one(self):
        assert Phase(Fraction(5, 4)) == Phase(Fraction(1, 4))
        assert Phase(Fraction(-1, 3)).exponent == Fraction(2, 3)

    def test_sign(self):
        assert Phase.from_sign(-1).sign() == -1
        assert Phase().sign() == 1
        with pytest.raises(ValueError):
            Phase(Fraction(1, 4)).sign()

    def test_unit_complex_rejects_non_unit(self):
        with pytest.raises(ValueError):
            UnitComplex(2 + 0j)

    def test_unit_complex_phase_tracking(self):
        i = UnitComplex.from_phase(Phase(Fraction(1, 4)))
        assert (i * i).phase == Phase(Fraction(1, 2))
        assert (i ** 4).close_to(1)
        assert i.inverse().phase == Phase(Fraction(3, 4))


class TestAdditiveCharacter:
    """加法指標のテスト"""

    def setup_method(self):
        self.field = FieldConfig(p=5)
        self.psi = standard_additive_character(self.field)

    def test_trivial_on_integers(self):
        assert eval_add(self.psi, self.field.element(7)).is_trivial()

    def test_fractional_part(self):
        assert eval_add(self.psi, self.field.element(Fraction(3, 5))) == Phase(Fraction(3, 5))
        assert eval_add(self.psi, self.field.element(Fraction(1, 25))) == Phase(Fraction(1, 25))

    def test_conductor(self):
        assert self.psi.conductor == 0
        assert standard_additive_character(self.field, 2).conductor == 2

    def test_additive(self):
        x = self.field.element(Fraction(2, 25))
        y = self.field.element(Fraction(4, 5))
        assert eval_add(self.psi, x + y) == eval_add(self.psi, x) + eval_add(self.psi, y)

    def test_psi_E_through_trace(self):
        """ψ_E(x) = ψ(Tr x)"""
        psi_e = psi_E(self.psi)
        x = self.field.element_e(Fraction(1, 10), 3)
        assert eval_add(psi_e, x) == eval_add(self.psi, x.trace())


class TestMultiplicativeCharacter:
    """乗法指標のテスト"""

    def test_trivial(self):
        field = FieldConfig(p=3)
        mu = trivial_character(field)
        assert eval_mult(mu, field.element_e(2, 1)).is_trivial()
        assert conductor(mu) == 0
        assert conjugate_dual_sign(mu) == ConjugateDualSign.PLUS

    def test_zero_argument(self):
        field = FieldConfig(p=3)
        with pytest.raises(DivisionByZero):
            eval_mult(trivial_character(field), field.element_e(0))

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_sgn_character_matches_sgn(self, kind):
        field = FieldConfig(p=5, ext_kind=kind)
        sgn = sgn_character(field)
        for value in (2, 3, 5, 10, -1, Fraction(1, 5)):
            x = field.element(value)
            assert eval_mult(sgn, x) == Phase.from_sign(sgn_EF(field, x))

    def test_multiplicative(self):
        field = FieldConfig(p=3)
        mu = MultiplicativeCharacter(field, "E", 1, (1,), Phase(Fraction(1, 3)))
        x = field.element_e(1, 1)
        y = field.element_e(3, 2)
        assert eval_mult(mu, x * y) == eval_mult(mu, x) + eval_mult(mu, y)

    def test_multiply_and_power(self):
        field = FieldConfig(p=3)
        mu = MultiplicativeCharacter(field, "E", 1, (1,), Phase(Fraction(1, 3)))
        square = multiply_characters(mu, mu)
        assert characters_equal(square, power_character(mu, 2))
        assert characters_equal(power_character(mu, 24), trivial_character(field))

    def test_text_round_trip(self):
        field = FieldConfig(p=3)
        mu = MultiplicativeCharacter(field, "E", 1, (3,), Phase(Fraction(1, 2)))
        assert MultiplicativeCharacter.from_text(field, mu.to_text()) == mu
        with pytest.raises(ValueError):
            MultiplicativeCharacter.from_text(field, "E:1:3")


class TestConjugateDualSign:
    """共役双対符号のテスト"""

    def test_none_sign_and_partner(self):
        """不分岐な μ(ϖ) = e(1/3) は F^× 上で非自明な非 sgn 指標"""
        field = FieldConfig(p=3)
        mu = MultiplicativeCharacter(field, "E", 0, (), Phase(Fraction(1, 3)))
        assert conjugate_dual_sign(mu) == ConjugateDualSign.NONE
        partner = conjugate_dual_partner(mu)
        assert partner.uniformizer_phase == Phase(Fraction(2, 3))

    def test_unramified_sign_character(self):
        """μ(p) = -1 の不分岐指標は sgn の拡張"""
        field = FieldConfig(p=3)
        mu = MultiplicativeCharacter(field, "E", 0, (), Phase(Fraction(1, 2)))
        assert conjugate_dual_sign(mu) == ConjugateDualSign.MINUS

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_extension_restricts_to_target(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        target = sgn_character(field)
        mu = extend_character(target)
        assert characters_equal(restrict_to_F(mu), target)
        assert conjugate_dual_sign(mu) == ConjugateDualSign.MINUS

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_restricted_sweep(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        plus = restricted_sweep(field, 0, 1, 8)
        minus = restricted_sweep(field, 1, 1, 8)
        assert plus and minus
        assert all(conjugate_dual_sign(mu) == ConjugateDualSign.PLUS for mu in plus)
        assert all(conjugate_dual_sign(mu) == ConjugateDualSign.MINUS for mu in minus)
        assert all(conductor(mu) <= 1 for mu in plus + minus)


if __name__ == "__main__":
    pytest.main([__file__])
