"""
Epsilon / Torus Proportionality Verifier

μ|_{F^×} = sgn_{E/F} の指標について
    ε(1/2, μ, ψ_E^δ) と sgn(-2) γ_ψ(N) S_μ(1,1)
が正の実数倍で一致することを確かめる。あわせて
トーラスの全測度と剰余類の直接和による検算を行う。
"""

import logging
from typing import Any, Dict, List, Optional

from data_structures.characters import AdditiveCharacter, MultiplicativeCharacter
from data_structures.errors import LocalFactorError
from data_structures.local_field import FieldConfig
from data_structures.reports import VerificationReport
from engines.character_engine import conductor, standard_additive_character
from engines.epsilon_engine import default_psi_prime, tate_epsilon
from engines.padic_arithmetic import sgn_EF
from engines.torus_integral import haar_mass_check, norm_one_oracle, regularized_torus_integral
from engines.weil_engine import gamma_norm_form

RATIO_TOLERANCE = 1e-6
ORACLE_TOLERANCE = 1e-5
MASS_TOLERANCE = 1e-10


def _inputs(mu: MultiplicativeCharacter) -> Dict[str, Any]:
    field = mu.field
    return {"p": field.p, "ext": field.ext_kind.value, "mu": mu.to_text()}


def proportionality_ratio(mu: MultiplicativeCharacter,
                          psi: Optional[AdditiveCharacter] = None) -> complex:
    """r = ε(μ) / (sgn(-2) γ_ψ(N) S_μ(1,1))"""
    field = mu.field
    psi = psi or standard_additive_character(field, 0)
    epsilon = tate_epsilon(mu, default_psi_prime(field, psi))
    gamma = gamma_norm_form(field, psi)
    sign = sgn_EF(field, field.element(-2))
    torus = regularized_torus_integral(mu).limit_at_s0
    denominator = sign * gamma.value * torus
    if abs(denominator) < 1e-14:
        raise LocalFactorError(f"S_mu(1,1) vanishes for {mu.to_text()}")
    return epsilon / denominator


def verify_epsilon_torus_proportionality(mu: MultiplicativeCharacter,
                                         psi: Optional[AdditiveCharacter] = None,
                                         tolerance: float = RATIO_TOLERANCE) -> VerificationReport:
    """比 r が正の実数か（|Im r| <= tol·|r| かつ Re r > 0）"""
    identity = "torus_integral.epsilon_proportionality"
    inputs = _inputs(mu)
    try:
        ratio = proportionality_ratio(mu, psi)
    except LocalFactorError as exc:
        logging.warning(f"Proportionality check failed for {mu.to_text()}: {exc}")
        return VerificationReport.failed_with(identity, inputs, exc)
    ok = abs(ratio.imag) <= tolerance * abs(ratio) and ratio.real > 0
    return VerificationReport.check(identity, inputs, ok,
                                    lhs=ratio, rhs="positive real", tolerance=tolerance)


def default_oracle_depth(mu: MultiplicativeCharacter) -> int:
    """剰余類の直接和に使う深さ（殻が数個確定する程度）"""
    depth = max(conductor(mu), 1) + 3
    if not mu.field.is_ramified and mu.field.p > 5:
        depth = max(conductor(mu), 1) + 2
    return depth


def verify_torus_oracle(mu: MultiplicativeCharacter, depth: Optional[int] = None,
                        tolerance: float = ORACLE_TOLERANCE) -> List[VerificationReport]:
    """殻ごとの値と S_μ(1,1) を剰余類の直接和と比較する"""
    inputs = _inputs(mu)
    depth = depth or default_oracle_depth(mu)
    inputs["depth"] = depth
    try:
        value = regularized_torus_integral(mu)
        shells, oracle_total = norm_one_oracle(mu, depth)
    except LocalFactorError as exc:
        identity = "torus_integral.coset_oracle"
        return [VerificationReport.failed_with(identity, inputs, exc)]

    reports = []
    for shell in sorted(shells):
        shell_inputs = dict(inputs, shell=shell)
        reports.append(VerificationReport.compare(
            "torus_integral.shell_sum", shell_inputs,
            value.shell_value(shell), shells[shell], tolerance))
    reports.append(VerificationReport.compare(
        "torus_integral.coset_oracle", inputs,
        value.limit_at_s0, oracle_total, tolerance))
    return reports


def verify_haar_mass(field: FieldConfig, tolerance: float = MASS_TOLERANCE) -> VerificationReport:
    """殻分解で求めた Ker N の全測度が 1"""
    identity = "torus_integral.haar_mass"
    inputs = {"p": field.p, "ext": field.ext_kind.value}
    try:
        mass = haar_mass_check(field).limit_at_s0
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, mass, 1.0, tolerance)


def verify_resolution_stability(mu: MultiplicativeCharacter,
                                tolerance: float = MASS_TOLERANCE) -> VerificationReport:
    """厳密に和をとる殻を一つ増やしても極限値が変わらない"""
    identity = "torus_integral.resolution_stability"
    inputs = _inputs(mu)
    try:
        base = regularized_torus_integral(mu).limit_at_s0
        deeper = regularized_torus_integral(mu, extra_depth=1).limit_at_s0
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, deeper, base, tolerance)
