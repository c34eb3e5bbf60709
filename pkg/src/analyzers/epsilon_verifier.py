"""
Epsilon Factor Verifier

Tate の ε 因子の恒等式:
符号 + の指標で ε = 1、共役双対な指標で ε² = 1、
Gauss 和と関数等式の二通りの計算の一致、ε_ν1 の入れ替え則
"""

import logging
import random
from typing import Any, Dict, List, Sequence

from data_structures.characters import MultiplicativeCharacter
from data_structures.errors import LocalFactorError
from data_structures.local_field import ElementF, FieldConfig
from data_structures.reports import VerificationReport
from engines.character_engine import eval_mult, multiply_characters
from engines.epsilon_engine import (
    default_psi_prime, epsilon_functional_equation, epsilon_gauss_sum, epsilon_nu1, tate_epsilon
)

EPSILON_TOLERANCE = 1e-8


def _inputs(mu: MultiplicativeCharacter) -> Dict[str, Any]:
    return {"p": mu.field.p, "ext": mu.field.ext_kind.value, "mu": mu.to_text()}


def verify_plus_sign_epsilon(mu: MultiplicativeCharacter,
                             tolerance: float = EPSILON_TOLERANCE) -> VerificationReport:
    """μ|_{F^×} = 1 なら ε(1/2, μ, ψ_E^δ) = 1"""
    identity = "epsilon_factor.plus_sign_trivial"
    try:
        value = tate_epsilon(mu)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, _inputs(mu), exc)
    return VerificationReport.compare(identity, _inputs(mu), value, 1.0, tolerance)


def verify_conjugate_dual_square(mu: MultiplicativeCharacter,
                                 tolerance: float = EPSILON_TOLERANCE) -> VerificationReport:
    """共役双対な μ について ε(μ)² = 1"""
    identity = "epsilon_factor.conjugate_dual_square"
    try:
        value = tate_epsilon(mu)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, _inputs(mu), exc)
    return VerificationReport.compare(identity, _inputs(mu), value ** 2, 1.0, tolerance)


def verify_cross_check(mu: MultiplicativeCharacter,
                       tolerance: float = EPSILON_TOLERANCE) -> VerificationReport:
    """Gauss 和と関数等式による ε の一致"""
    identity = "epsilon_factor.gauss_vs_functional_equation"
    psi_prime = default_psi_prime(mu.field)
    try:
        gauss = epsilon_gauss_sum(mu, psi_prime)
        functional = epsilon_functional_equation(mu, psi_prime)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, _inputs(mu), exc)
    return VerificationReport.compare(identity, _inputs(mu), gauss, functional, tolerance)


def verify_nu1_swap(mu: MultiplicativeCharacter, mu_prime: MultiplicativeCharacter, nu1: ElementF,
                    tolerance: float = EPSILON_TOLERANCE) -> VerificationReport:
    """ε_ν1(μ, μ') = (μμ')(-1) ε_ν1(μ', μ)"""
    identity = "epsilon_factor.nu1_swap"
    inputs = dict(_inputs(mu), mu_prime=mu_prime.to_text(), nu1=nu1.to_text())
    try:
        forward = epsilon_nu1(mu, mu_prime, nu1)
        backward = epsilon_nu1(mu_prime, mu, nu1)
        sign = eval_mult(multiply_characters(mu, mu_prime), -1).to_complex()
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, forward, sign * backward, tolerance)


def _sample(characters: Sequence[MultiplicativeCharacter], rng: random.Random,
            count: int) -> List[MultiplicativeCharacter]:
    if len(characters) <= count:
        return list(characters)
    return rng.sample(list(characters), count)


def run_epsilon_checks(field: FieldConfig, plus: Sequence[MultiplicativeCharacter],
                       minus: Sequence[MultiplicativeCharacter], rng: random.Random,
                       samples: int, tolerance: float = EPSILON_TOLERANCE) -> List[VerificationReport]:
    """符号 +/- の指標から samples 個ずつ選んで検証する"""
    chosen_plus = _sample(plus, rng, samples)
    chosen_minus = _sample(minus, rng, samples)
    reports = [verify_plus_sign_epsilon(mu, tolerance) for mu in chosen_plus]
    reports.extend(verify_conjugate_dual_square(mu, tolerance) for mu in chosen_plus + chosen_minus)
    reports.extend(verify_cross_check(mu, tolerance) for mu in chosen_plus + chosen_minus)
    pool = chosen_plus + chosen_minus
    for _ in range(min(samples, len(pool))):
        mu, mu_prime = rng.choice(pool), rng.choice(pool)
        nu1 = field.element(rng.choice([1, field.non_residue, field.p]))
        reports.append(verify_nu1_swap(mu, mu_prime, nu1, tolerance))
    logging.info(f"Epsilon checks over p={field.p} {field.ext_kind.value}: {len(reports)} items")
    return reports
