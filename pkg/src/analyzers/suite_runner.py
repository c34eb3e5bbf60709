"""
Suite Runner

実行設定に従って各スイートの検証項目を作り、ワーカープールで実行して
SuiteReport にまとめる。項目の順序は設定だけで決まる（完了順には依存しない）。
"""

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, List

from analyzers.epsilon_verifier import run_epsilon_checks
from analyzers.langlands_verifier import run_constant_checks, run_ggp_checks
from analyzers.parameter_verifier import run_parameter_checks
from analyzers.proportionality_verifier import (
    default_oracle_depth, verify_epsilon_torus_proportionality, verify_haar_mass,
    verify_resolution_stability, verify_torus_oracle
)
from analyzers.transfer_limit_verifier import ScenarioBuilder, TransferCase, verify_transfer_limit
from analyzers.weil_verifier import run_weil_checks
from data_structures.errors import ConfigError, LocalFactorError
from data_structures.local_field import FieldConfig
from data_structures.reports import SUITES, RunConfig, SuiteReport, VerificationReport
from engines.character_engine import restricted_sweep

SuiteItem = Callable[[], List[VerificationReport]]


@dataclass
class SuiteEntry:
    """一つの検証項目（項目ごと失敗したときの identity_id と inputs を持つ）"""
    suite: str
    identity_id: str
    inputs: Dict[str, Any]
    run: SuiteItem = dataclass_field(repr=False)


def fields_for(config: RunConfig) -> List[FieldConfig]:
    """設定の素数と拡大の種類の全ての組（設定の順序のまま）"""
    return [FieldConfig(p=p, working_precision=config.precision, ext_kind=kind)
            for p in config.primes for kind in config.ext_kinds]


def _field_inputs(field: FieldConfig, **extra: Any) -> Dict[str, Any]:
    return dict({"p": field.p, "ext": field.ext_kind.value}, **extra)


def _item_rng(config: RunConfig, *labels) -> random.Random:
    """項目ごとに独立な乱数列（並列実行でも結果が変わらない）"""
    return random.Random(":".join(str(x) for x in (config.seed,) + labels))


def _weil_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    rng = _item_rng(config, "weil", field.p, field.ext_kind.value)
    return [SuiteEntry("weil", "weil_constant.multiplicativity", _field_inputs(field),
                       lambda: run_weil_checks(field, rng, config.samples, config.tolerance))]


def _epsilon_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    rng = _item_rng(config, "epsilon", field.p, field.ext_kind.value)

    def item() -> List[VerificationReport]:
        plus = restricted_sweep(field, 0, config.max_conductor, config.max_order)
        minus = restricted_sweep(field, 1, config.max_conductor, config.max_order)
        return run_epsilon_checks(field, plus, minus, rng, config.samples, config.tolerance)
    return [SuiteEntry("epsilon", "epsilon_factor.gauss_vs_functional_equation",
                       _field_inputs(field), item)]


def _torus_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    items = [SuiteEntry("torus", "torus_integral.haar_mass", _field_inputs(field),
                        lambda: [verify_haar_mass(field)])]
    identity = "torus_integral.epsilon_proportionality"
    try:
        characters = restricted_sweep(field, 1, config.max_conductor, config.max_order)
    except LocalFactorError as exc:
        failure = VerificationReport.failed_with(identity, _field_inputs(field), exc)
        return items + [SuiteEntry("torus", identity, _field_inputs(field), lambda: [failure])]
    for index, mu in enumerate(characters):
        def item(mu=mu, index=index) -> List[VerificationReport]:
            reports = [verify_epsilon_torus_proportionality(mu), verify_resolution_stability(mu)]
            if index < config.samples:
                reports.extend(verify_torus_oracle(mu, default_oracle_depth(mu)))
            return reports
        items.append(SuiteEntry("torus", identity, _field_inputs(field, mu=mu.to_text()), item))
    return items


def _transfer_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    items: List[SuiteEntry] = []
    for case in TransferCase:
        rng = _item_rng(config, "transfer", field.p, field.ext_kind.value, case.value)
        identity = f"transfer_limit.{case.value}"
        inputs = _field_inputs(field, case=case.value)

        def item(case=case, rng=rng, identity=identity, inputs=inputs) -> List[VerificationReport]:
            builder = ScenarioBuilder(field, rng, max_conductor=config.max_conductor,
                                      max_order=config.max_order)
            reports = []
            for _ in range(config.samples):
                try:
                    reports.append(verify_transfer_limit(builder.build(case)))
                except LocalFactorError as exc:
                    reports.append(VerificationReport.failed_with(identity, inputs, exc))
            return reports
        items.append(SuiteEntry("transfer", identity, inputs, item))
    return items


def _params_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    rng = _item_rng(config, "params", field.p, field.ext_kind.value)
    return [SuiteEntry("params", "parameter_space.delta_multiplicative", _field_inputs(field),
                       lambda: run_parameter_checks(field, rng, config.samples,
                                                    config.max_conductor, config.max_order))]


def _ggp_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    rng = _item_rng(config, "ggp", field.p, field.ext_kind.value)

    def item() -> List[VerificationReport]:
        plus = restricted_sweep(field, 0, config.max_conductor, config.max_order)
        minus = restricted_sweep(field, 1, config.max_conductor, config.max_order)
        return run_ggp_checks(field, rng, config.samples, plus, minus)
    return [SuiteEntry("ggp", "ggp.z_phi_identity", _field_inputs(field), item)]


def _constants_items(config: RunConfig, field: FieldConfig) -> List[SuiteEntry]:
    return [SuiteEntry("constants", "constants.unit_modulus", _field_inputs(field),
                       lambda: run_constant_checks(field, config.tolerance))]


SUITE_BUILDERS = {
    "weil": _weil_items,
    "epsilon": _epsilon_items,
    "torus": _torus_items,
    "transfer": _transfer_items,
    "params": _params_items,
    "ggp": _ggp_items,
    "constants": _constants_items,
}


def build_items(config: RunConfig, suite: str) -> List[SuiteEntry]:
    """設定の順序に並んだ検証項目"""
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITE_BUILDERS:
        names = [suite]
    else:
        raise ConfigError(f"unknown suite '{suite}', expected one of {SUITES + ['all']}")
    items: List[SuiteEntry] = []
    for name in names:
        for field in fields_for(config):
            items.extend(SUITE_BUILDERS[name](config, field))
    return items


def _run_item(entry: SuiteEntry, record_timings: bool) -> List[VerificationReport]:
    start = time.perf_counter()
    try:
        reports = entry.run()
    except LocalFactorError as exc:
        logging.warning(f"Suite item {entry.identity_id} {entry.inputs} errored: {exc}")
        reports = [VerificationReport.failed_with(entry.identity_id, entry.inputs, exc)]
    if record_timings and reports:
        elapsed = (time.perf_counter() - start) * 1000.0 / len(reports)
        for report in reports:
            report.wall_time_ms = round(elapsed, 3)
    return reports


def run_suite(config: RunConfig, suite: str) -> SuiteReport:
    """スイートを実行する（ConfigError 以外の例外は各項目の結果に記録される）"""
    items = build_items(config, suite)
    logging.info(f"Running suite '{suite}': {len(items)} items with {config.workers} workers")
    reports: List[VerificationReport] = []
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        for result in executor.map(lambda entry: _run_item(entry, config.record_timings), items):
            reports.extend(result)
    suite_report = SuiteReport(suite=suite, reports=reports, config=config.echo())
    logging.info(f"Suite '{suite}' finished: {suite_report.passed_count} passed, "
                 f"{suite_report.failed_count} failed, {suite_report.error_count} errors")
    return suite_report
