"""
Parameter Space Verifier

正則な ξ の上で Δ, D, D^d と二つの転送因子の性質を確かめる。
"""

import logging
import random
from typing import Any, Dict, List

from analyzers.transfer_limit_verifier import ScenarioBuilder
from data_structures.errors import LocalFactorError
from data_structures.local_field import FieldConfig
from data_structures.parameters import CClass, XiParameter
from data_structures.reports import VerificationReport
from engines.character_engine import restricted_sweep
from engines.transfer_engine import (
    D_d, D_function, Delta, default_gamma, transfer_factor_twisted, transfer_factor_unitary
)

UNIT_TOLERANCE = 1e-12


def _inputs(xi_plus: XiParameter, xi_minus: XiParameter) -> Dict[str, Any]:
    field = xi_plus.field
    return {"p": field.p, "ext": field.ext_kind.value,
            "xi_plus": xi_plus.to_json(), "xi_minus": xi_minus.to_json()}


def verify_delta_multiplicative(xi_plus: XiParameter, xi_minus: XiParameter) -> VerificationReport:
    """Δ(ξ+ ⊔ ξ-) = Δ(ξ+) Δ(ξ-)"""
    identity = "parameter_space.delta_multiplicative"
    inputs = _inputs(xi_plus, xi_minus)
    try:
        lhs = Delta(xi_plus.disjoint_union(xi_minus))
        rhs = Delta(xi_plus) * Delta(xi_minus)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, lhs, rhs)


def verify_padded_discriminant(xi: XiParameter, extra: int) -> VerificationReport:
    """D^d(ξ) = Δ(ξ)^(d - d_ξ) D(ξ)"""
    identity = "parameter_space.padded_discriminant"
    d = xi.degree + extra
    inputs = {"p": xi.field.p, "ext": xi.field.ext_kind.value, "xi": xi.to_json(), "d": d}
    try:
        lhs = D_d(xi, d)
        rhs = Delta(xi) ** extra * D_function(xi)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.compare(identity, inputs, lhs, rhs)


def verify_transfer_factors(xi_plus: XiParameter, xi_minus: XiParameter,
                            rng: random.Random, max_conductor: int,
                            max_order: int) -> List[VerificationReport]:
    """両方の転送因子が定義され（C_i ∈ F^×）絶対値 1、Γ(ξ) のノルム倍で不変"""
    field = xi_plus.field
    inputs = _inputs(xi_plus, xi_minus)
    xi = xi_plus.disjoint_union(xi_minus)
    d_plus, d_minus = xi_plus.degree, xi_minus.degree
    reports = []

    identity = "transfer_factor.unitary_unit_modulus"
    try:
        mu_plus = rng.choice(restricted_sweep(field, d_minus % 2, max_conductor, max_order))
        mu_minus = rng.choice(restricted_sweep(field, d_plus % 2, max_conductor, max_order))
        c = CClass(tuple(rng.choice((1, -1)) for _ in xi.dihedral_indices))
        nu = rng.choice([1, field.non_norm])
        value = transfer_factor_unitary(xi_plus, xi_minus, c, mu_plus, mu_minus, nu)
        reports.append(VerificationReport.compare(
            identity, dict(inputs, mu_plus=mu_plus.to_text(), mu_minus=mu_minus.to_text(),
                                     c=list(c.signs), nu=nu),
            abs(value.value), 1.0, UNIT_TOLERANCE))
    except (LocalFactorError, IndexError) as exc:
        reports.append(VerificationReport.failed_with(identity, inputs, exc))

    identity = "transfer_factor.twisted_norm_invariance"
    try:
        mu_plus = rng.choice(restricted_sweep(field, d_minus % 2, max_conductor, max_order))
        mu_minus = rng.choice(restricted_sweep(field, (d_plus + 1) % 2, max_conductor, max_order))
        gamma = default_gamma(xi)
        base = transfer_factor_twisted(xi_plus, xi_minus, gamma, mu_plus, mu_minus)
        scaled = gamma
        for index in range(len(gamma.gammas)):
            z = field.element_e(rng.randrange(1, field.p), rng.randrange(0, field.p))
            scaled = scaled.scaled(index, z.norm())
        moved = transfer_factor_twisted(xi_plus, xi_minus, scaled, mu_plus, mu_minus)
        reports.append(VerificationReport.check(
            identity, dict(inputs, mu_plus=mu_plus.to_text(), mu_minus=mu_minus.to_text()),
            base.phase == moved.phase and abs(abs(base.value) - 1) <= UNIT_TOLERANCE,
            lhs=moved.phase, rhs=base.phase))
    except (LocalFactorError, IndexError) as exc:
        reports.append(VerificationReport.failed_with(identity, inputs, exc))
    return reports


def run_parameter_checks(field: FieldConfig, rng: random.Random, samples: int,
                         max_conductor: int, max_order: int) -> List[VerificationReport]:
    """乱数で作った正則な (ξ+, ξ-) の上の性質"""
    builder = ScenarioBuilder(field, rng, max_conductor=max_conductor, max_order=max_order)
    reports = []
    for _ in range(samples):
        try:
            xi_plus, xi_minus = builder.parameter_pair()
        except LocalFactorError as exc:
            identity = "parameter_space.delta_multiplicative"
            reports.append(VerificationReport.failed_with(identity, {"p": field.p}, exc))
            continue
        reports.append(verify_delta_multiplicative(xi_plus, xi_minus))
        reports.append(verify_padded_discriminant(xi_plus.disjoint_union(xi_minus), rng.randint(1, 3)))
        reports.extend(verify_transfer_factors(xi_plus, xi_minus, rng, max_conductor, max_order))
    logging.info(f"Parameter checks over p={field.p} {field.ext_kind.value}: {len(reports)} items")
    return reports
