"""
Epsilon Verifier Tests
"""

import random
import pytest

import sys
import os

# srcディレクトリをパスに追加
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../../src"))

from analyzers.epsilon_verifier import (
    run_epsilon_checks, verify_conjugate_dual_square, verify_cross_check, verify_nu1_swap,
    verify_plus_sign_epsilon
)
from data_structures.local_field import ExtKind, FieldConfig
from engines.character_engine import restricted_sweep, trivial_character


class TestEpsilonVerifier:
    """ε 因子の恒等式"""

    def setup_method(self):
        self.field = FieldConfig(p=3, ext_kind=ExtKind.RAMIFIED_P)
        self.plus = restricted_sweep(self.field, 0, 1, 8)
        self.minus = restricted_sweep(self.field, 1, 1, 8)

    def test_plus_sign(self):
        report = verify_plus_sign_epsilon(trivial_character(self.field))
        assert report.identity_id == "epsilon_factor.plus_sign_trivial"
        assert report.status == "pass"

    def test_conjugate_dual_square(self):
        for mu in self.minus[:2]:
            assert verify_conjugate_dual_square(mu).status == "pass"

    def test_cross_check(self):
        report = verify_cross_check(self.minus[0])
        assert report.identity_id == "epsilon_factor.gauss_vs_functional_equation"
        assert report.status == "pass"

    def test_nu1_swap(self):
        report = verify_nu1_swap(self.minus[-1], self.plus[-1], self.field.element(2))
        assert report.status == "pass"
        assert report.inputs["nu1"] == "2"

    def test_run_counts(self):
        reports = run_epsilon_checks(self.field, self.plus[:2], self.minus[:2], random.Random(0), 2)
        assert len(reports) == 2 + 4 + 4 + 2
        identities = {r.identity_id for r in reports}
        assert identities == {
            "epsilon_factor.plus_sign_trivial",
            "epsilon_factor.conjugate_dual_square",
            "epsilon_factor.gauss_vs_functional_equation",
            "epsilon_factor.nu1_swap",
        }


if __name__ == "__main__":
    pytest.main([__file__])
