"""
Weil Verifier Tests
"""

import random
import pytest

import sys
import os

# srcディレクトリをパスに追加
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../../src"))

from analyzers.weil_verifier import (
    random_form, random_scalar, run_weil_checks, verify_form_identities, verify_hyperbolic,
    verify_lattice_integral, verify_norm_scaling
)
from data_structures.local_field import ExtKind, FieldConfig
from data_structures.quadratic_forms import QuadraticFormF


class TestWeilVerifier:
    """Weil 定数の性質"""

    def setup_method(self):
        self.field = FieldConfig(p=3)

    def test_random_scalar_range(self):
        rng = random.Random(0)
        for _ in range(20):
            value = random_scalar(self.field, rng)
            assert 0 <= value.valuation <= 2

    def test_random_form_dimension(self):
        rng = random.Random(0)
        for _ in range(10):
            assert 1 <= random_form(self.field, rng).dimension <= 3

    def test_hyperbolic(self):
        assert verify_hyperbolic(self.field).status == "pass"

    def test_form_identities(self):
        q = QuadraticFormF.from_values(self.field, [1])
        q_prime = QuadraticFormF.from_values(self.field, [3])
        reports = verify_form_identities(self.field, q, q_prime)
        assert [r.identity_id for r in reports] == [
            "weil_constant.multiplicativity", "weil_constant.negation", "weil_constant.eighth_root"
        ]
        assert all(r.status == "pass" for r in reports)

    @pytest.mark.parametrize("kind", list(ExtKind))
    def test_norm_scaling(self, kind):
        field = FieldConfig(p=3, ext_kind=kind)
        for value in (1, 2, 3, 6):
            assert verify_norm_scaling(field, field.element(value)).status == "pass"

    def test_lattice_integral(self):
        report = verify_lattice_integral(self.field, [1, 2])
        assert report.status == "pass"
        assert report.inputs["coefficients"] == [1, 2]

    def test_run_counts(self):
        reports = run_weil_checks(self.field, random.Random(5), samples=2)
        assert len(reports) == 1 + 2 * 4 + 3
        assert reports[0].identity_id == "weil_constant.hyperbolic"
        assert reports[-1].identity_id == "weil_constant.lattice_integral"


if __name__ == "__main__":
    pytest.main([__file__])
