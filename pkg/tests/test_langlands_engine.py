"""
Test suite for Langlands engine

指標の和からなる L パラメータ、成分群、ε 指標、GGP の二分法、定数表
テスト対象: src/engines/langlands_engine.py
"""

import pytest
from fractions import Fraction

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from data_structures.characters import MultiplicativeCharacter, Phase
from data_structures.errors import InvalidParameter
from data_structures.langlands import ComponentGroupElement, GGPOutcomeKind
from data_structures.local_field import ExtKind, FieldConfig
from engines.character_engine import (
    characters_equal, eval_mult, power_character, restricted_sweep, standard_additive_character,
    trivial_character
)
from engines.langlands_engine import (
    c_pair, component_group, constants_table, determinant_character, epsilon_character,
    epsilon_nu1_parameter, epsilon_of_tensor, gamma_TE, ggp_dichotomy, make_parameter,
    multiplicity_matrix, multiplicity_pairing, parameter_from_json, s_ratio, split_element,
    tensor_product, z_phi
)
from engines.weil_engine import gamma_norm_form


@pytest.fixture
def field():
    return FieldConfig(p=3)


@pytest.fixture
def minus(field):
    return restricted_sweep(field, 1, 1, 8)


class TestParameters:
    """パラメータの構成と検証"""

    def test_trivial_odd_parameter(self, field):
        phi = make_parameter(field, [(trivial_character(field), 1)])
        assert phi.dimension == 1
        assert phi.matching_indices == [0]
        assert z_phi(phi) == ComponentGroupElement((-1,))

    def test_missing_partner(self, field):
        mu = MultiplicativeCharacter(field, "E", 0, (), Phase(Fraction(1, 3)))
        with pytest.raises(InvalidParameter):
            make_parameter(field, [(mu, 1)])

    def test_partner_pair(self, field):
        mu = MultiplicativeCharacter(field, "E", 0, (), Phase(Fraction(1, 3)))
        partner = MultiplicativeCharacter(field, "E", 0, (), Phase(Fraction(2, 3)))
        phi = make_parameter(field, [(mu, 1), (partner, 1)])
        assert phi.dimension == 2
        assert component_group(phi).rank == 0

    def test_opposite_sign_needs_even_multiplicity(self, field, minus):
        trivial = trivial_character(field)
        with pytest.raises(InvalidParameter):
            make_parameter(field, [(trivial, 1), (minus[0], 1)])
        phi = make_parameter(field, [(trivial, 2), (minus[0], 2)])
        assert phi.matching_indices == [1]
        assert z_phi(phi) == ComponentGroupElement((1,))

    def test_duplicate_character(self, field):
        trivial = trivial_character(field)
        with pytest.raises(InvalidParameter):
            make_parameter(field, [(trivial, 1), (trivial, 2)])

    def test_from_json(self, field):
        phi = parameter_from_json(field, [{"character": "E:0::0", "multiplicity": 3}])
        assert phi.dimension == 3
        with pytest.raises(InvalidParameter):
            parameter_from_json(field, [{"multiplicity": 1}])

    def test_tensor_and_determinant(self, field, minus):
        phi = make_parameter(field, [(minus[0], 1), (minus[1], 1)])
        trivial = make_parameter(field, [(trivial_character(field), 1)])
        assert tensor_product(phi, trivial).dimension == 2
        square = make_parameter(field, [(minus[0], 2)])
        assert characters_equal(determinant_character(square), power_character(minus[0], 2))

    def test_split_element(self, field, minus):
        phi = make_parameter(field, [(minus[0], 2), (minus[1], 2)])
        assert split_element(phi, {0: 1}) == ComponentGroupElement((-1, 1))
        with pytest.raises(InvalidParameter):
            split_element(phi, {1: 3})


class TestGGP:
    """GGP の二分法"""

    def test_empty_against_trivial(self, field):
        phi = make_parameter(field, [])
        phi_prime = make_parameter(field, [(trivial_character(field), 1)])
        assert epsilon_of_tensor(phi, phi_prime) == 1

        outcome = ggp_dichotomy(phi, phi_prime, 1)
        assert outcome.kind == GGPOutcomeKind.DISTINGUISHED
        assert outcome.eps_Gprime.exponents() == (0,)
        assert ggp_dichotomy(phi, phi_prime, -1).kind == GGPOutcomeKind.ALL_ZERO

    def test_multiplicity_matrix(self, field):
        phi = make_parameter(field, [])
        phi_prime = make_parameter(field, [(trivial_character(field), 1)])
        assert multiplicity_matrix(phi, phi_prime, 1) == {((), (0,)): 1, ((), (1,)): 0}
        assert multiplicity_matrix(phi, phi_prime, -1) == {((), (0,)): 0, ((), (1,)): 0}

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_z_phi_identity(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        minus = restricted_sweep(field, 1, 1, 8)
        plus = restricted_sweep(field, 0, 1, 8)
        phi = make_parameter(field, [(minus[0], 1), (minus[-1], 1)])
        phi_prime = make_parameter(field, [(plus[-1], 1)])
        total = epsilon_of_tensor(phi, phi_prime)
        assert epsilon_character(phi, phi_prime)(z_phi(phi)) == total
        assert epsilon_character(phi_prime, phi)(z_phi(phi_prime)) == total
        assert epsilon_character(phi, phi_prime).is_multiplicative()

    def test_pairing_at_identity(self, field, minus):
        phi = make_parameter(field, [(minus[0], 1), (minus[1], 1)])
        phi_prime = make_parameter(field, [(trivial_character(field), 1)])
        total = epsilon_of_tensor(phi, phi_prime)
        identity = component_group(phi).identity()
        identity_prime = component_group(phi_prime).identity()
        assert multiplicity_pairing(phi, identity, phi_prime, identity_prime, total) == 1
        assert multiplicity_pairing(phi, identity, phi_prime, identity_prime, -total) == 0
        ones = [key for key, value in multiplicity_matrix(phi, phi_prime, total).items() if value == 1]
        assert len(ones) == 1

    def test_input_checks(self, field):
        odd = make_parameter(field, [(trivial_character(field), 1)])
        with pytest.raises(InvalidParameter):
            ggp_dichotomy(odd, odd, 1)
        with pytest.raises(InvalidParameter):
            ggp_dichotomy(make_parameter(field, []), odd, 0)
        with pytest.raises(InvalidParameter):
            epsilon_character(odd, odd)

    def test_nu1_swap(self, field, minus):
        phi = make_parameter(field, [(minus[0], 1), (minus[1], 1)])
        phi_prime = make_parameter(field, [(trivial_character(field), 1)])
        nu1 = field.element(2)
        forward = epsilon_nu1_parameter(phi, phi_prime, nu1)
        backward = epsilon_nu1_parameter(phi_prime, phi, nu1)
        det = determinant_character(phi)
        sign = eval_mult(det, field.element(-1)).to_complex()
        assert abs(forward - sign * backward) < 1e-8


class TestConstants:
    """定数表"""

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_c_pair_odd(self, kind):
        field = FieldConfig(p=5, ext_kind=kind)
        gamma = gamma_norm_form(field, standard_additive_character(field))
        value = c_pair(field, 1, 3)
        assert abs(abs(value.value) - 1) < 1e-12
        assert (value ** 2).close_to((gamma.inverse() ** 2).value)

    def test_trivial_cases(self, field):
        assert c_pair(field, 2, 3).close_to(1)
        assert s_ratio(field, 1, 2).close_to(1)
        assert gamma_TE(field, 1, 2).close_to(1)

    def test_non_quasi_split(self, field):
        assert gamma_TE(field, 2, 4, quasi_split=False).close_to(-1)
        quasi = gamma_TE(field, 1, 3)
        assert gamma_TE(field, 1, 3, quasi_split=False).close_to(-quasi.value)

    def test_unramified_values(self, field):
        """不分岐なら γ(N) = 1、sgn(±2) = 1"""
        assert c_pair(field, 1, 1).close_to(1)
        assert s_ratio(field, 3, 5).close_to(1)

    def test_lookup(self, field):
        assert constants_table(field, "gamma_TE", 2, 2, quasi_split=False).close_to(-1)
        with pytest.raises(InvalidParameter):
            constants_table(field, "unknown", 1, 1)


if __name__ == "__main__":
    pytest.main([__file__])
