"""
Weil Constant Verifier

乱数で作った対角二次形式について Weil 定数の性質を検証する:
直和で乗法的、双曲平面で 1、γ(q)γ(-q) = 1、γ(q)^8 = 1、γ_ψ(λN) = sgn(λ) γ_ψ(N)
"""

import logging
import random
from typing import Any, Dict, List, Optional

from data_structures.characters import Phase, UnitComplex
from data_structures.errors import LocalFactorError
from data_structures.local_field import ElementF, FieldConfig
from data_structures.quadratic_forms import QuadraticFormF, hyperbolic_plane
from data_structures.reports import VerificationReport
from engines.character_engine import standard_additive_character
from engines.padic_arithmetic import sgn_EF
from engines.weil_engine import (
    brute_force_lattice_integral, gamma_norm_form, weil_constant, weil_lattice_integral
)

WEIL_TOLERANCE = 1e-8


def random_scalar(field: FieldConfig, rng: random.Random, max_valuation: int = 2) -> ElementF:
    """p^v u（u は 1..p-1）"""
    p = field.p
    return field.element(p ** rng.randint(0, max_valuation) * rng.randrange(1, p))


def random_form(field: FieldConfig, rng: random.Random, max_dimension: int = 3) -> QuadraticFormF:
    return QuadraticFormF(tuple(random_scalar(field, rng) for _ in range(rng.randint(1, max_dimension))))


def _form_inputs(field: FieldConfig, **forms: QuadraticFormF) -> Dict[str, Any]:
    inputs: Dict[str, Any] = {"p": field.p, "ext": field.ext_kind.value}
    for name, q in forms.items():
        inputs[name] = [a.to_text() for a in q.coefficients]
    return inputs


def verify_form_identities(field: FieldConfig, q: QuadraticFormF, q_prime: QuadraticFormF,
                           tolerance: float = WEIL_TOLERANCE) -> List[VerificationReport]:
    """一組の (q, q') に対する四つの性質"""
    psi = standard_additive_character(field, 0)
    inputs = _form_inputs(field, q=q, q_prime=q_prime)
    reports = []
    try:
        gamma_q = weil_constant(q, psi)
        gamma_sum = weil_constant(q.direct_sum(q_prime), psi)
        gamma_q_prime = weil_constant(q_prime, psi)
        gamma_negated = weil_constant(q.negate(), psi)
    except LocalFactorError as exc:
        identity = "weil_constant.multiplicativity"
        return [VerificationReport.failed_with(identity, inputs, exc)]

    reports.append(VerificationReport.compare(
        "weil_constant.multiplicativity", inputs,
        gamma_sum, gamma_q * gamma_q_prime, tolerance))
    reports.append(VerificationReport.compare(
        "weil_constant.negation", inputs,
        gamma_q * gamma_negated, 1.0, tolerance))
    reports.append(VerificationReport.compare(
        "weil_constant.eighth_root", inputs,
        gamma_q ** 8, 1.0, tolerance))
    return reports


def verify_hyperbolic(field: FieldConfig, tolerance: float = WEIL_TOLERANCE) -> VerificationReport:
    identity = "weil_constant.hyperbolic"
    inputs = {"p": field.p, "ext": field.ext_kind.value}
    try:
        value = weil_constant(hyperbolic_plane(field), standard_additive_character(field, 0))
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, value, 1.0, tolerance)


def verify_norm_scaling(field: FieldConfig, lam: ElementF,
                        tolerance: float = WEIL_TOLERANCE) -> VerificationReport:
    """γ_ψ(λN) = sgn(λ) γ_ψ(N)"""
    identity = "weil_constant.norm_form_scaling"
    inputs = {"p": field.p, "ext": field.ext_kind.value, "lambda": lam.to_text()}
    psi = standard_additive_character(field, 0)
    try:
        scaled = gamma_norm_form(field, psi, lam)
        base = gamma_norm_form(field, psi)
        sign = UnitComplex.from_phase(Phase.from_sign(sgn_EF(field, lam)))
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, scaled, sign * base, tolerance)


def verify_lattice_integral(field: FieldConfig, coefficients: List[int], k: int = 1,
                            depth: int = 1, tolerance: float = WEIL_TOLERANCE) -> VerificationReport:
    """閉じた形の格子積分と剰余類の直接和（次元 2 以下の小さな形のみ）"""
    identity = "weil_constant.lattice_integral"
    inputs = {"p": field.p, "coefficients": coefficients, "k": k, "depth": depth}
    psi = standard_additive_character(field, 0)
    try:
        q = QuadraticFormF.from_values(field, coefficients)
        closed = weil_lattice_integral(k, q, psi)
        direct = brute_force_lattice_integral(k, coefficients, psi, depth)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, closed, direct, tolerance)


def run_weil_checks(field: FieldConfig, rng: random.Random, samples: int,
                    tolerance: float = WEIL_TOLERANCE,
                    lattice_coefficients: Optional[List[List[int]]] = None) -> List[VerificationReport]:
    """一つの体について Weil 定数の性質を samples 組ずつ確かめる"""
    reports = [verify_hyperbolic(field, tolerance)]
    for _ in range(samples):
        q = random_form(field, rng)
        q_prime = random_form(field, rng)
        reports.extend(verify_form_identities(field, q, q_prime, tolerance))
        reports.append(verify_norm_scaling(field, random_scalar(field, rng), tolerance))
    p = field.p
    for coefficients in lattice_coefficients or [[1], [p], [1, field.non_residue]]:
        reports.append(verify_lattice_integral(field, coefficients, tolerance=tolerance))
    logging.info(f"Weil checks over p={p} {field.ext_kind.value}: {len(reports)} items")
    return reports
