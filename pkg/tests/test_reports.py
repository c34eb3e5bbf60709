"""
Test suite for report and run configuration structures

テスト対象: src/data_structures/reports.py
"""

import json
import pytest
from fractions import Fraction

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../src"))

from data_structures.characters import Phase, UnitComplex
from data_structures.errors import ConfigError
from data_structures.local_field import ExtKind, FieldConfig
from data_structures.reports import (
    IDENTITY_STATEMENTS, RunConfig, SuiteReport, VerificationReport, encode_value,
    load_run_config, make_run_config, parse_config_text, statement_for
)


class TestEncodeValue:
    """レポート用の値の変換"""

    def test_scalars(self):
        assert encode_value(3) == 3
        assert encode_value(True) is True
        assert encode_value(Fraction(1, 3)) == "1/3"
        assert encode_value(Phase(Fraction(1, 4))) == "e(1/4)"

    def test_complex(self):
        assert encode_value(1j) == [0.0, 1.0]
        assert encode_value(UnitComplex.from_phase(Phase(Fraction(1, 2)))) == [-1.0, 0.0]

    def test_negative_zero_is_normalized(self):
        assert str(encode_value(-0.0)) == "0.0"

    def test_nested(self):
        field = FieldConfig(p=5)
        data = encode_value({"x": [field.element(Fraction(3, 25))], 1: float("inf")})
        assert data == {"x": ["3/25"], "1": "inf"}


class TestVerificationReport:
    """一つの恒等式の結果"""

    def test_exact_compare(self):
        report = VerificationReport.compare("weil_constant.hyperbolic", {"p": 3}, 1, 1)
        assert report.passed
        assert report.status == "pass"

    def test_tolerance_compare(self):
        report = VerificationReport.compare("epsilon_factor.plus_sign_trivial",
                                            {}, 1 + 1e-10, 1, tolerance=1e-8)
        assert report.passed
        failing = VerificationReport.compare("epsilon_factor.plus_sign_trivial",
                                             {}, 1.1, 1, tolerance=1e-8)
        assert failing.status == "fail"

    def test_error_report(self):
        report = VerificationReport.failed_with("torus_integral.shell_sum", {"p": 3}, ValueError("boom"))
        assert report.status == "error"
        assert report.error == "ValueError: boom"

    def test_json_line_uses_pass_key(self):
        report = VerificationReport.check("ggp.dichotomy_consistency", {"p": 5}, True)
        data = json.loads(report.to_json_line())
        assert data["pass"] is True
        assert "wall_time_ms" not in data

    def test_anchor_is_the_checked_statement(self):
        report = VerificationReport.check("weil_constant.hyperbolic", {"p": 3}, True)
        data = json.loads(report.to_json_line())
        assert data["anchor"] == IDENTITY_STATEMENTS["weil_constant.hyperbolic"]
        assert data["anchor"] != data["identity_id"]

    def test_every_identity_has_a_statement(self):
        assert all(statement.strip() for statement in IDENTITY_STATEMENTS.values())
        assert statement_for("weil_constant.negation") == "γ_ψ(q) γ_ψ(-q) = 1"
        assert statement_for("unknown.check") == "suite item unknown.check"


class TestSuiteReport:
    """スイートの集計"""

    def test_counts_and_summary(self):
        reports = [
            VerificationReport.check("a", {}, True),
            VerificationReport.check("b", {}, False),
            VerificationReport.failed_with("c", {}, ValueError("x")),
        ]
        suite = SuiteReport(suite="weil", reports=reports)
        assert (suite.passed_count, suite.failed_count, suite.error_count) == (1, 1, 1)
        assert not suite.all_passed

        lines = suite.to_json_lines().strip().split("\n")
        assert len(lines) == 4
        summary = json.loads(lines[-1])
        assert summary["summary"] is True
        assert summary["total"] == 3

    def test_empty_suite_passes(self):
        assert SuiteReport(suite="ggp").all_passed


class TestRunConfig:
    """実行設定"""

    def test_defaults(self):
        config = RunConfig()
        assert config.primes == [3, 5, 7]
        assert config.ext_kinds == list(ExtKind)
        assert "output" not in config.echo()

    @pytest.mark.parametrize("values", [
        {"primes": [2]},
        {"primes": [9]},
        {"primes": []},
        {"precision": 4},
        {"tolerance": 1e-2},
        {"workers": 0},
        {"max_order": 1},
    ])
    def test_invalid_values(self, values):
        with pytest.raises(ConfigError):
            make_run_config(values)

    def test_parse_config_text(self):
        text = """
        # primes and kinds
        primes = 3, 5
        ext_kinds = unramified
        seed = 7   # comment
        """
        values = parse_config_text(text)
        assert values == {"primes": ["3", "5"], "ext_kinds": ["unramified"], "seed": "7"}
        config = make_run_config(values)
        assert config.primes == [3, 5]
        assert config.ext_kinds == [ExtKind.UNRAMIFIED]
        assert config.seed == 7

    def test_parse_errors(self):
        with pytest.raises(ConfigError):
            parse_config_text("primes 3")
        with pytest.raises(ConfigError):
            parse_config_text("colour = blue")

    def test_overrides(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("primes = 3\nsamples = 4\n", encoding="utf-8")
        config = load_run_config(path, {"samples": 2, "seed": None})
        assert config.primes == [3]
        assert config.samples == 2
        assert config.seed == 0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_run_config(tmp_path / "missing.cfg")


if __name__ == "__main__":
    pytest.main([__file__])
