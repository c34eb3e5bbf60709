"""
Suite Runner Tests

項目の構成・順序の決定性・タイミングの記録
"""

import json
import pytest

import sys
import os

# srcディレクトリをパスに追加
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "../../src"))

from analyzers.suite_runner import (
    SUITE_BUILDERS, SuiteEntry, _run_item, build_items, fields_for, run_suite
)
from analyzers.transfer_limit_verifier import TransferCase
from data_structures.errors import ConfigError, PrecisionExhausted
from data_structures.local_field import ExtKind
from data_structures.reports import IDENTITY_STATEMENTS, SUITES, RunConfig


class TestBuildItems:
    """項目の構成"""

    def test_builders_cover_suites(self):
        assert set(SUITE_BUILDERS) == set(SUITES)

    def test_fields_order(self):
        config = RunConfig(primes=[5, 3], ext_kinds=[ExtKind.RAMIFIED_P, ExtKind.UNRAMIFIED])
        pairs = [(f.p, f.ext_kind) for f in fields_for(config)]
        assert pairs == [(5, ExtKind.RAMIFIED_P), (5, ExtKind.UNRAMIFIED),
                         (3, ExtKind.RAMIFIED_P), (3, ExtKind.UNRAMIFIED)]

    def test_unknown_suite(self):
        with pytest.raises(ConfigError):
            build_items(RunConfig(), "bogus")

    def test_single_suite_names(self):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED])
        names = [entry.suite for entry in build_items(config, "constants")]
        assert names == ["constants"]
        weil_names = {entry.suite for entry in build_items(config, "weil")}
        assert weil_names == {"weil"}

    def test_transfer_items_carry_field_and_case(self):
        config = RunConfig(primes=[5], ext_kinds=[ExtKind.RAMIFIED_P])
        entries = build_items(config, "transfer")
        assert [entry.identity_id for entry in entries] == [
            f"transfer_limit.{case.value}" for case in TransferCase]
        assert all(entry.inputs["p"] == 5 and entry.inputs["ext"] == "ramified_p" for entry in entries)
        assert [entry.inputs["case"] for entry in entries] == [case.value for case in TransferCase]

    def test_failed_item_keeps_identity_and_inputs(self):
        def broken():
            raise PrecisionExhausted("need 30 digits")

        inputs = {"p": 3, "ext": "unramified", "case": "dihedral_plus_unitary"}
        entry = SuiteEntry("transfer", "transfer_limit.dihedral_plus_unitary", inputs, broken)
        reports = _run_item(entry, record_timings=False)
        assert len(reports) == 1
        report = reports[0]
        assert report.status == "error"
        assert report.identity_id == "transfer_limit.dihedral_plus_unitary"
        assert report.inputs == inputs
        assert report.anchor == IDENTITY_STATEMENTS["transfer_limit.dihedral_plus_unitary"]
        assert report.error == "PrecisionExhausted: need 30 digits"


class TestRunSuite:
    """スイートの実行"""

    def test_constants_suite(self):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED])
        report = run_suite(config, "constants")
        assert report.suite == "constants"
        assert len(report.reports) == 19
        assert report.all_passed
        assert report.config["primes"] == [3]

    def test_order_independent_of_workers(self):
        serial = run_suite(RunConfig(primes=[3, 5], workers=1), "constants")
        parallel = run_suite(RunConfig(primes=[3, 5], workers=4), "constants")
        assert [r.to_json_line() for r in serial.reports] == [r.to_json_line() for r in parallel.reports]

    def test_timings(self):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED], record_timings=True)
        report = run_suite(config, "constants")
        assert all(r.wall_time_ms is not None for r in report.reports)

    @pytest.mark.parametrize("suite", ["constants", "weil"])
    def test_every_line_carries_its_statement(self, suite):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED], samples=1)
        report = run_suite(config, suite)
        for line in report.to_json_lines().strip().split("\n")[:-1]:
            data = json.loads(line)
            assert data["anchor"] == IDENTITY_STATEMENTS[data["identity_id"]]

    def test_transfer_suite_has_no_errors(self):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED], samples=1)
        report = run_suite(config, "transfer")
        assert len(report.reports) == len(TransferCase)
        assert report.error_count == 0, [r.error for r in report.reports if r.error]

    def test_weil_suite_is_reproducible(self):
        config = RunConfig(primes=[3], ext_kinds=[ExtKind.UNRAMIFIED], samples=1, seed=11)
        first = run_suite(config, "weil")
        second = run_suite(config, "weil")
        assert [r.inputs for r in first.reports] == [r.inputs for r in second.reports]


if __name__ == "__main__":
    pytest.main([__file__])
