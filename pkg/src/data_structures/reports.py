"""
Report and Run Configuration Data Structures

検証結果（1 恒等式 1 行の JSON lines）と実行設定（key=value ファイル + コマンドライン上書き）
"""

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from sympy import isprime

from .characters import Phase, UnitComplex
from .errors import ConfigError
from .local_field import ElementE, ElementF, ExtKind

ARTIFACT_VERSION = "1.0.0"

# 複素数を書き出すときの小数桁
ENCODE_DIGITS = 12

SUITES = ["weil", "epsilon", "torus", "transfer", "params", "ggp", "constants"]

# identity_id -> 検証している等式（レポートの anchor）
IDENTITY_STATEMENTS: Dict[str, str] = {
    "weil_constant.multiplicativity": "γ_ψ(q ⊕ q') = γ_ψ(q) γ_ψ(q')",
    "weil_constant.negation": "γ_ψ(q) γ_ψ(-q) = 1",
    "weil_constant.eighth_root": "γ_ψ(q)^8 = 1",
    "weil_constant.hyperbolic": "γ_ψ(H) = 1",
    "weil_constant.norm_form_scaling": "γ_ψ(λN_{E/F}) = sgn_{E/F}(λ) γ_ψ(N_{E/F})",
    "weil_constant.lattice_integral": "I_ψ(p^k O^n, q) in closed form = I_ψ(p^k O^n, q) summed over residues",
    "epsilon_factor.plus_sign_trivial": "μ|F^× = 1 ⇒ ε(1/2, μ, ψ_E^δ) = 1",
    "epsilon_factor.conjugate_dual_square": "μ conjugate-dual ⇒ ε(1/2, μ, ψ_E^δ)^2 = 1",
    "epsilon_factor.gauss_vs_functional_equation":
        "ε(1/2, μ, ψ') by Gauss sum = ε(1/2, μ, ψ') by the local functional equation",
    "epsilon_factor.nu1_swap": "ε_ν1(μ, μ') = (μμ')(-1) ε_ν1(μ', μ)",
    "torus_integral.epsilon_proportionality":
        "μ|F^× = sgn_{E/F} ⇒ ε(1/2, μ, ψ_E^δ) ∈ R_{>0} · sgn_{E/F}(-2) γ_ψ(N_{E/F}) S_μ(1,1)",
    "torus_integral.coset_oracle": "S_μ(1,1) = Σ over Ker N_{E/F} / (Ker N_{E/F} ∩ (1 + p_E^n)) cosets",
    "torus_integral.shell_sum": "shell term of S_μ(1,1) = coset sum over the shell |1 - x|_E = q_E^-j",
    "torus_integral.haar_mass": "vol(Ker N_{E/F}) = 1",
    "torus_integral.resolution_stability": "S_μ(1,1) does not depend on the exactly summed shells",
    "transfer_limit.split_plus_unitary":
        "Δ_{μ+,μ-,ν}(ξ+ ⊔ ζ_a(λ), ξ-, c) = μ+(e^{λa}) Δ_{μ+,μ-,ν}(ξ+, ξ-, c)",
    "transfer_limit.split_minus_unitary":
        "Δ_{μ+,μ-,ν}(ξ+, ξ- ⊔ ζ_a(λ), c) = μ-(e^{λa}) Δ_{μ+,μ-,ν}(ξ+, ξ-, c)",
    "transfer_limit.split_plus_twisted":
        "Δ_{μ+,μ-}(ξ+ ⊔ ζ_a(λ), ξ-, γ) = μ+(e^{λa}) Δ_{μ+,μ-}(ξ+, ξ-, γ)",
    "transfer_limit.split_minus_twisted":
        "Δ_{μ+,μ-}(ξ+, ξ- ⊔ ζ_a(λ), γ) = μ-(e^{λa}) Δ_{μ+,μ-}(ξ+, ξ-, γ)",
    "transfer_limit.dihedral_plus_unitary":
        "lim_{λ→0} Δ_{μ+,μ-,ν}(ξ+ ⊔ ζ_b(λ), ξ-, (c, c_b)) = "
        "sgn_{E/F}(δ^{-d-} P_{ξ-}(1) / P_{ξ-}(-1)) Δ_{μ+,μ-,ν}(ξ+, ξ-, c)",
    "transfer_limit.dihedral_plus_twisted":
        "lim_{λ→0} Δ_{μ+,μ-}(ξ+ ⊔ ζ_b(λ), ξ-, (γ, c_b e^{λb/2})) = "
        "sgn_{E/F}(δ^{-d-} P_{ξ-}(1) / P_{ξ-}(-1)) Δ_{μ+,μ-}(ξ+, ξ-, γ)",
    "transfer_limit.dihedral_minus_unitary":
        "lim_{λ→0} Δ_{μ+,μ-,ν}(ξ+, ξ- ⊔ ζ_b(λ), (c, c_b)) = "
        "sgn_{E/F}((-1)^{d+1} c_b ν δ^{-d+} P_{ξ+}(1) / P_{ξ+}(-1)) Δ_{μ+,μ-,ν}(ξ+, ξ-, c)",
    "transfer_limit.dihedral_minus_twisted":
        "lim_{λ→0} Δ_{μ+,μ-}(ξ+, ξ- ⊔ ζ_b(λ), (γ, c_b e^{λb/2})) = "
        "sgn_{E/F}((-1)^d c_b δ^{-d+} P_{ξ+}(1) / P_{ξ+}(-1)) Δ_{μ+,μ-}(ξ+, ξ-, γ)",
    "parameter_space.delta_multiplicative": "Δ(ξ+ ⊔ ξ-) = Δ(ξ+) Δ(ξ-)",
    "parameter_space.padded_discriminant": "D^d(ξ) = Δ(ξ)^(d - d_ξ) D(ξ)",
    "transfer_factor.unitary_unit_modulus": "|Δ_{μ+,μ-,ν}(ξ+, ξ-, c)| = 1",
    "transfer_factor.twisted_norm_invariance":
        "Δ_{μ+,μ-}(ξ+, ξ-, γ) = Δ_{μ+,μ-}(ξ+, ξ-, γ · N_{E/F}(z))",
    "ggp.z_phi_identity": "ε^G_{φ,φ'}(z_φ) = ε^{G'}_{φ',φ}(z_φ') = ε(1/2, φ ⊗ φ', ψ_E^δ)",
    "ggp.epsilon_character_multiplicative": "ε^G_{φ,φ'} is a character of S_φ",
    "ggp.dichotomy_consistency":
        "Σ_{s,s'} m(s, s') ε(s) ε'(s') recovers one multiplicity 1 iff ε(φ ⊗ φ') = μ(G)",
    "constants.unit_modulus": "|c(d, d')| = |s(d, d')| = |γ_TE(d, d')| = 1",
    "constants.c_pair_live": "c(d odd, d' odd) = γ_ψ(N_{E/F})^{-1} sgn_{E/F}(2)",
    "constants.c_pair_square": "c(d odd, d' odd)^2 = γ_ψ(N_{E/F})^{-2}",
    "constants.non_quasi_split_even": "γ_TE(d even, d' even) = -1 for the non-quasi-split form",
}


def statement_for(identity_id: str) -> str:
    """identity_id の等式。未登録ならスイート単位の項目として扱う"""
    statement = IDENTITY_STATEMENTS.get(identity_id)
    if statement is not None:
        return statement
    return f"suite item {identity_id}"


def _round(x: float) -> float:
    return round(float(x), ENCODE_DIGITS) + 0.0


def encode_value(value: Any) -> Any:
    """レポート用に値を JSON で表せる形に変換する"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return _round(value) if math.isfinite(value) else str(value)
    if isinstance(value, complex):
        return [_round(value.real), _round(value.imag)]
    if isinstance(value, UnitComplex):
        return encode_value(value.value)
    if isinstance(value, Phase):
        return f"e({value.exponent})"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ElementF):
        return value.to_text()
    if isinstance(value, ElementE):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if hasattr(value, "to_text"):
        return value.to_text()
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


class VerificationReport(BaseModel):
    """一つの恒等式の検証結果"""

    model_config = ConfigDict(populate_by_name=True)

    identity_id: str
    anchor: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None
    tolerance: float = 0.0
    passed: bool = Field(False, alias="pass")
    status: str = "fail"
    error: Optional[str] = None
    wall_time_ms: Optional[float] = None

    @classmethod
    def compare(cls, identity_id: str, inputs: Dict[str, Any],
                lhs: Any, rhs: Any, tolerance: float = 0.0) -> "VerificationReport":
        """lhs と rhs を比較した結果（tolerance = 0 は厳密比較）"""
        if tolerance > 0:
            ok = abs(complex(_as_number(lhs)) - complex(_as_number(rhs))) <= tolerance
        else:
            ok = lhs == rhs
        return cls(identity_id=identity_id, anchor=statement_for(identity_id), inputs=encode_value(inputs),
                   lhs=encode_value(lhs), rhs=encode_value(rhs), tolerance=tolerance,
                   passed=bool(ok), status="pass" if ok else "fail")

    @classmethod
    def check(cls, identity_id: str, inputs: Dict[str, Any], ok: bool,
              lhs: Any = None, rhs: Any = None, tolerance: float = 0.0) -> "VerificationReport":
        """真偽値で判定済みの結果"""
        return cls(identity_id=identity_id, anchor=statement_for(identity_id), inputs=encode_value(inputs),
                   lhs=encode_value(lhs), rhs=encode_value(rhs), tolerance=tolerance,
                   passed=bool(ok), status="pass" if ok else "fail")

    @classmethod
    def failed_with(cls, identity_id: str, inputs: Dict[str, Any],
                    exc: Exception) -> "VerificationReport":
        """計算途中の例外を記録した結果"""
        return cls(identity_id=identity_id, anchor=statement_for(identity_id), inputs=encode_value(inputs),
                   passed=False, status="error", error=f"{type(exc).__name__}: {exc}")

    def to_json_line(self) -> str:
        data = self.model_dump(by_alias=True)
        if data.get("wall_time_ms") is None:
            data.pop("wall_time_ms", None)
        return json.dumps(data, sort_keys=True, ensure_ascii=False)


def _as_number(value: Any) -> complex:
    if isinstance(value, UnitComplex):
        return value.value
    if isinstance(value, Phase):
        return value.to_complex()
    if isinstance(value, Fraction):
        return complex(float(value))
    return complex(value)


class SuiteReport(BaseModel):
    """スイート全体の結果"""
    suite: str
    reports: List[VerificationReport] = Field(default_factory=list)
    config: Dict[str, Any] = Field(default_factory=dict)
    version: str = ARTIFACT_VERSION

    @property
    def passed_count(self) -> int:
        return sum(1 for r in self.reports if r.status == "pass")

    @property
    def failed_count(self) -> int:
        return sum(1 for r in self.reports if r.status == "fail")

    @property
    def error_count(self) -> int:
        return sum(1 for r in self.reports if r.status == "error")

    @property
    def all_passed(self) -> bool:
        return self.failed_count == 0 and self.error_count == 0

    def summary(self) -> Dict[str, Any]:
        return {
            "summary": True,
            "suite": self.suite,
            "total": len(self.reports),
            "passed": self.passed_count,
            "failed": self.failed_count,
            "errors": self.error_count,
            "config": self.config,
            "version": self.version,
        }

    def to_json_lines(self) -> str:
        lines = [r.to_json_line() for r in self.reports]
        lines.append(json.dumps(self.summary(), sort_keys=True, ensure_ascii=False))
        return "\n".join(lines) + "\n"


class RunConfig(BaseModel):
    """検証スイートの実行設定"""

    model_config = ConfigDict(frozen=True)

    primes: List[int] = Field(default_factory=lambda: [3, 5, 7])
    ext_kinds: List[ExtKind] = Field(default_factory=lambda: list(ExtKind))
    precision: int = 20
    tolerance: float = 1e-8
    max_conductor: int = 2
    max_order: int = 12
    samples: int = 20
    seed: int = 0
    workers: int = 1
    output: Optional[str] = None
    record_timings: bool = False

    @field_validator("primes")
    @classmethod
    def _odd_primes(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("primes must not be empty")
        for p in value:
            if p == 2 or not isprime(p):
                raise ValueError(f"every prime must be odd, got {p}")
        return value

    @field_validator("precision")
    @classmethod
    def _precision_floor(cls, value: int) -> int:
        if value < 8:
            raise ValueError(f"precision must be >= 8, got {value}")
        return value

    @field_validator("tolerance")
    @classmethod
    def _tolerance_range(cls, value: float) -> float:
        if not 1e-12 <= value <= 1e-4:
            raise ValueError(f"tolerance must lie in [1e-12, 1e-4], got {value}")
        return value

    @field_validator("max_conductor", "samples", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"value must be >= 1, got {value}")
        return value

    @field_validator("max_order")
    @classmethod
    def _order_floor(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"max_order must be >= 2, got {value}")
        return value

    def echo(self) -> Dict[str, Any]:
        """レポートに書き出す設定（出力先は除く）"""
        data = self.model_dump(mode="json")
        data.pop("output", None)
        return data


LIST_KEYS = {"primes", "ext_kinds"}


def parse_config_text(text: str) -> Dict[str, Any]:
    """key=value 形式（# 以降はコメント、リストはカンマ区切り）"""
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected key=value, got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in RunConfig.model_fields:
            raise ConfigError(f"line {number}: unknown key '{key}'")
        if key in LIST_KEYS:
            values[key] = [item.strip() for item in value.split(",") if item.strip()]
        else:
            values[key] = value
    return values


def make_run_config(values: Dict[str, Any]) -> RunConfig:
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        messages = "; ".join(f"{'.'.join(str(x) for x in e['loc'])}: {e['msg']}" for e in exc.errors())
        raise ConfigError(f"invalid configuration: {messages}") from exc


def load_run_config(path: Optional[Union[str, Path]] = None,
                    overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """設定ファイルを読み、コマンドラインの値で上書きする"""
    values: Dict[str, Any] = {}
    if path is not None:
        config_path = Path(path)
        if not config_path.exists():
            raise ConfigError(f"config file not found: {config_path}")
        values.update(parse_config_text(config_path.read_text(encoding="utf-8")))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return make_run_config(values)
