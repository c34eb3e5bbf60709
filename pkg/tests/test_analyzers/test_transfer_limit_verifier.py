"""
Transfer Limit Verifier Tests

ξ± に ζ_a / ζ_b を加えたときの極限の検証
"""

import random
import pytest
from fractions import Fraction

import sys
import os

# srcディレクトリをパスに追加
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../../src"))

from analyzers.transfer_limit_verifier import (
    ScenarioBuilder, TransferCase, TransferScenario, check_hypotheses, verify_transfer_limit,
    window_start
)
from data_structures.characters import MultiplicativeCharacter, Phase
from data_structures.errors import HypothesisViolation
from data_structures.local_field import FieldConfig
from data_structures.parameters import GammaClass, XiParameter
from engines.character_engine import trivial_character


def make_scenario(field, case, mu_plus=None, mu_minus=None, c_b_sign=1, nu=1):
    """空の ξ± に一つのブロックを加えるシナリオ"""
    trivial = trivial_character(field)
    return TransferScenario(
        case=case,
        xi_plus=XiParameter.empty(field),
        xi_minus=XiParameter.empty(field),
        mu_plus=mu_plus or trivial,
        mu_minus=mu_minus or trivial,
        gamma=GammaClass(()),
        nu=nu,
        a=field.element_e(1),
        b=field.delta,
        c_b_sign=c_b_sign,
    )


class TestTransferCase:
    """場合の分類"""

    def test_properties(self):
        assert TransferCase.SPLIT_PLUS_TWISTED.is_split
        assert TransferCase.SPLIT_PLUS_TWISTED.on_plus_side
        assert TransferCase.SPLIT_PLUS_TWISTED.is_twisted
        assert not TransferCase.DIHEDRAL_MINUS_UNITARY.is_split
        assert not TransferCase.DIHEDRAL_MINUS_UNITARY.on_plus_side
        assert not TransferCase.DIHEDRAL_MINUS_UNITARY.is_twisted

    def test_eight_cases(self):
        assert len(list(TransferCase)) == 8


class TestHypotheses:
    """仮定の確認"""

    def setup_method(self):
        self.field = FieldConfig(p=5)

    def test_split_needs_trace(self):
        scenario = make_scenario(self.field, TransferCase.SPLIT_PLUS_UNITARY)
        scenario.a = self.field.delta
        with pytest.raises(HypothesisViolation):
            check_hypotheses(scenario)

    def test_dihedral_needs_trace_zero(self):
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_PLUS_UNITARY)
        scenario.b = self.field.element_e(1)
        with pytest.raises(HypothesisViolation):
            verify_transfer_limit(scenario)

    def test_restriction(self):
        sign = MultiplicativeCharacter(self.field, "E", 0, (), Phase(Fraction(1, 2)))
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_PLUS_UNITARY, mu_plus=sign)
        with pytest.raises(HypothesisViolation):
            check_hypotheses(scenario)

    def test_twisted_needs_gamma(self):
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_PLUS_TWISTED)
        scenario.gamma = None
        with pytest.raises(HypothesisViolation):
            check_hypotheses(scenario)

    def test_window_start(self):
        """不分岐な単数 b、導手 0 なら k0 = 2"""
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_MINUS_UNITARY)
        assert window_start(scenario) == 2


class TestLimits:
    """空の ξ± での極限"""

    def setup_method(self):
        self.field = FieldConfig(p=5)
        self.sign = MultiplicativeCharacter(self.field, "E", 0, (), Phase(Fraction(1, 2)))

    @pytest.mark.parametrize("case", [
        TransferCase.SPLIT_PLUS_UNITARY,
        TransferCase.SPLIT_MINUS_UNITARY,
        TransferCase.SPLIT_PLUS_TWISTED,
        TransferCase.SPLIT_MINUS_TWISTED,
        TransferCase.DIHEDRAL_PLUS_UNITARY,
        TransferCase.DIHEDRAL_PLUS_TWISTED,
    ])
    def test_trivial_characters(self, case):
        report = verify_transfer_limit(make_scenario(self.field, case))
        assert report.identity_id == f"transfer_limit.{case.value}"
        assert report.status == "pass"
        assert len(report.inputs["k"]) == 4

    @pytest.mark.parametrize("c_b_sign", [1, -1])
    @pytest.mark.parametrize("nu", [1, 5])
    def test_dihedral_minus_unitary(self, c_b_sign, nu):
        """C_b = c_b / δ² の符号と sgn(-c_b ν) が一致する"""
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_MINUS_UNITARY,
                                 c_b_sign=c_b_sign, nu=nu)
        assert verify_transfer_limit(scenario).status == "pass"

    @pytest.mark.parametrize("c_b_sign", [1, -1])
    def test_dihedral_minus_twisted(self, c_b_sign):
        scenario = make_scenario(self.field, TransferCase.DIHEDRAL_MINUS_TWISTED,
                                 mu_minus=self.sign, c_b_sign=c_b_sign)
        assert verify_transfer_limit(scenario).status == "pass"


class TestScenarioBuilder:
    """乱数シナリオ"""

    @pytest.mark.parametrize("case", list(TransferCase))
    def test_built_scenarios_satisfy_hypotheses(self, case):
        builder = ScenarioBuilder(FieldConfig(p=5), random.Random(1), max_conductor=1, max_order=8)
        scenario = builder.build(case)
        check_hypotheses(scenario)
        union = scenario.xi_plus.disjoint_union(scenario.xi_minus)
        assert union.is_regular()
        assert len(scenario.signs.signs) == len(union.dihedral_indices)
        assert "case" in scenario.describe()

    def test_deterministic(self):
        first = ScenarioBuilder(FieldConfig(p=5), random.Random(3)).build(TransferCase.SPLIT_PLUS_UNITARY)
        second = ScenarioBuilder(FieldConfig(p=5), random.Random(3)).build(TransferCase.SPLIT_PLUS_UNITARY)
        assert first.describe() == second.describe()


if __name__ == "__main__":
    pytest.main([__file__])
