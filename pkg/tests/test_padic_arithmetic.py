"""
Test suite for p-adic arithmetic

sgn_{E/F}、exp/log、ノルム 1 トーラスの代表、Hilbert 90
テスト対象: src/engines/padic_arithmetic.py, src/engines/unit_group.py
"""

import pytest

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from data_structures.errors import DomainError, PrecisionExhausted
from data_structures.local_field import ExtKind, FieldConfig
from engines.padic_arithmetic import (
    hilbert90_solution, norm_one_index, norm_one_reps, padic_exp, padic_log, sgn_EF
)
from engines.unit_group import get_unit_group


class TestSgnEF:
    """sgn_{E/F} のテスト"""

    def test_unramified_is_parity_of_valuation(self):
        field = FieldConfig(p=5)
        assert sgn_EF(field, field.element(5)) == -1
        assert sgn_EF(field, field.element(25)) == 1
        assert sgn_EF(field, field.element(2)) == 1

    def test_ramified_values(self):
        """E = Q_5(√5): sgn(x) = (x, 5)_5"""
        field = FieldConfig(p=5, ext_kind=ExtKind.RAMIFIED_P)
        assert sgn_EF(field, field.element(2)) == -1
        assert sgn_EF(field, field.element(-1)) == 1
        assert sgn_EF(field, field.element(-5)) == 1

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_norms_are_trivial(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        for a, b in [(1, 1), (2, 1), (1, 2), (3, 1), (1, 0)]:
            z = field.element_e(a, b)
            assert sgn_EF(field, z.norm()) == 1

    def test_zero(self):
        field = FieldConfig(p=3)
        with pytest.raises(DomainError):
            sgn_EF(field, field.element(0))


class TestExpLog:
    """p 進 exp / log のテスト"""

    def test_first_terms(self):
        field = FieldConfig(p=5)
        x = field.element(5)
        assert (padic_exp(x) - 1 - x).val() >= 2

    def test_homomorphism(self):
        field = FieldConfig(p=5)
        assert padic_exp(field.element(5)) * padic_exp(field.element(10)) == padic_exp(field.element(15))

    def test_log_inverts_exp(self):
        field = FieldConfig(p=7)
        x = field.element(14)
        assert padic_log(padic_exp(x)) == x

    @pytest.mark.parametrize("p", [3, 5, 7])
    @pytest.mark.parametrize("kind", list(ExtKind))
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_exp_of_trace_zero_has_norm_one(self, p, kind, k):
        field = FieldConfig(p=p, ext_kind=kind)
        x = field.delta * p ** k
        y = padic_exp(x)
        assert (y.norm() - 1).is_zero()
        # 打ち切った桁より先を主張しない
        assert min(y.a.abs_precision, y.b.abs_precision) <= x.b.abs_precision

    @pytest.mark.parametrize("p", [3, 5, 7])
    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_exp_inverts_log_on_E(self, p, kind):
        field = FieldConfig(p=p, ext_kind=kind)
        u = field.element_e(1 + p, p)
        assert (padic_exp(padic_log(u)) - u).is_zero()

    def test_log_of_omega_unit_round_trips(self):
        field = FieldConfig(p=3)
        u = field.element_e(1, 9)
        value = padic_log(u)
        assert min(value.a.abs_precision, value.b.abs_precision) <= (u - 1).b.abs_precision
        assert (padic_exp(value) - u).is_zero()

    def test_divergent_exp(self):
        field = FieldConfig(p=5)
        with pytest.raises(DomainError):
            padic_exp(field.element(2))

    def test_log_needs_principal_unit(self):
        field = FieldConfig(p=5)
        with pytest.raises(DomainError):
            padic_log(field.element(2))


class TestNormOneTorus:
    """Ker N の剰余類代表のテスト"""

    @pytest.mark.parametrize("kind", list(ExtKind))
    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_representative_count(self, kind, depth):
        field = FieldConfig(p=3, ext_kind=kind)
        reps = norm_one_reps(field, depth)
        assert len(reps) == norm_one_index(field, depth)
        for x in reps:
            assert (x.norm() - 1).is_zero()

    def test_depth_limit(self):
        field = FieldConfig(p=3, working_precision=8)
        with pytest.raises(PrecisionExhausted):
            norm_one_reps(field, 7)

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_hilbert90(self, kind):
        """γ / conj(γ) = y（y = -1 を含む）"""
        field = FieldConfig(p=5, ext_kind=kind)
        z = field.element_e(2, 1)
        for y in (z / z.conj(), field.element_e(-1)):
            gamma = hilbert90_solution(y)
            assert (gamma - y * gamma.conj()).is_zero()


class TestUnitGroup:
    """単数群の基底と離散対数"""

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_order_and_dlog(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        group = get_unit_group(field, "E", 3)
        product = 1
        for n in group.moduli:
            product *= n
        assert product == group.order
        for key in list(group.model.units())[:20]:
            assert group.compose(group.dlog(key)) == key


if __name__ == "__main__":
    pytest.main([__file__])
