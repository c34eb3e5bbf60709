"""
Langlands Sign Verifier

指標の和からなる (φ, φ') について
ε^G(z_φ) = ε^G'(z_φ') = ε(φ⊗φ')、ε 指標の乗法性、GGP の二分法と
Fourier 逆変換で得た重複度の整合性、および定数表の性質を確かめる。
"""

import logging
import random
from typing import Any, Dict, List, Sequence

from data_structures.characters import MultiplicativeCharacter, Phase, UnitComplex
from data_structures.errors import InvalidParameter, LocalFactorError
from data_structures.langlands import GGPOutcomeKind, LParameter
from data_structures.local_field import FieldConfig
from data_structures.reports import VerificationReport
from engines.character_engine import standard_additive_character
from engines.langlands_engine import (
    c_pair, component_group, constants_table, epsilon_character, epsilon_of_tensor,
    ggp_dichotomy, make_parameter, multiplicity_matrix, multiplicity_pairing, z_phi
)
from engines.padic_arithmetic import sgn_EF
from engines.weil_engine import gamma_norm_form

CONSTANT_TOLERANCE = 1e-8


def draw_parameter(field: FieldConfig, rng: random.Random, dimension: int,
                   plus: Sequence[MultiplicativeCharacter],
                   minus: Sequence[MultiplicativeCharacter]) -> LParameter:
    """次元 dimension の重複度 1 のパラメータ（符号は (-1)^(d+1) に揃える）"""
    pool = list(plus if dimension % 2 else minus)
    if len(pool) < dimension:
        raise InvalidParameter(f"only {len(pool)} characters available for dimension {dimension}")
    return make_parameter(field, [(mu, 1) for mu in rng.sample(pool, dimension)])


def _inputs(phi: LParameter, phi_prime: LParameter) -> Dict[str, Any]:
    field = phi.field
    return {"p": field.p, "ext": field.ext_kind.value,
            "phi": phi.to_json(), "phi_prime": phi_prime.to_json()}


def verify_z_identity(phi: LParameter, phi_prime: LParameter) -> VerificationReport:
    """ε^G(z_φ) = ε^G'(z_φ') = ε(φ⊗φ')"""
    identity = "ggp.z_phi_identity"
    inputs = _inputs(phi, phi_prime)
    try:
        total = epsilon_of_tensor(phi, phi_prime)
        at_z = epsilon_character(phi, phi_prime)(z_phi(phi))
        at_z_prime = epsilon_character(phi_prime, phi)(z_phi(phi_prime))
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.check(identity, inputs, at_z == at_z_prime == total,
                                    lhs=[at_z, at_z_prime], rhs=total)


def verify_character_property(phi: LParameter, phi_prime: LParameter) -> VerificationReport:
    identity = "ggp.epsilon_character_multiplicative"
    inputs = _inputs(phi, phi_prime)
    try:
        ok = (epsilon_character(phi, phi_prime).is_multiplicative() and
              epsilon_character(phi_prime, phi).is_multiplicative())
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    return VerificationReport.check(identity, inputs, ok)


def verify_dichotomy(phi: LParameter, phi_prime: LParameter, muG: int) -> VerificationReport:
    """二分法の結果と重複度行列（1 がちょうど一つ、または全て 0）が整合するか"""
    identity = "ggp.dichotomy_consistency"
    inputs = dict(_inputs(phi, phi_prime), muG=muG)
    try:
        outcome = ggp_dichotomy(phi, phi_prime, muG)
        matrix = multiplicity_matrix(phi, phi_prime, muG)
        unit = multiplicity_pairing(phi, component_group(phi).identity(), phi_prime,
                                    component_group(phi_prime).identity(), muG)
    except LocalFactorError as exc:
        return VerificationReport.failed_with(identity, inputs, exc)
    ones = sorted(key for key, value in matrix.items() if value == 1)
    others_zero = all(value in (0, 1) for value in matrix.values())
    if outcome.kind == GGPOutcomeKind.ALL_ZERO:
        ok = others_zero and not ones and unit == 0
        expected: Any = []
    else:
        expected = [(outcome.eps_G.exponents(), outcome.eps_Gprime.exponents())]
        ok = (others_zero and ones == expected and unit == 1 and
              outcome.eps_G(z_phi(phi)) == muG and outcome.eps_Gprime(z_phi(phi_prime)) == muG)
    return VerificationReport.check(identity, inputs, ok,
                                    lhs=[list(map(list, key)) for key in ones],
                                    rhs=[list(map(list, key)) for key in expected])


def _clip(dimension: int, available: int) -> int:
    """available 個の指標で作れる、dimension 以下で同じ偶奇の最大の次元"""
    while dimension > available and dimension >= 2:
        dimension -= 2
    return dimension


def run_ggp_checks(field: FieldConfig, rng: random.Random, samples: int,
                   plus: Sequence[MultiplicativeCharacter],
                   minus: Sequence[MultiplicativeCharacter]) -> List[VerificationReport]:
    """(偶数, 奇数) 次元 (6, 5) までの対を samples 個"""
    reports = []
    for _ in range(samples):
        d = rng.choice([0, 2, 4, 6])
        d_prime = rng.choice([1, 3, 5])
        try:
            phi = draw_parameter(field, rng, _clip(d, len(minus)), plus, minus)
            phi_prime = draw_parameter(field, rng, _clip(d_prime, len(plus)), plus, minus)
        except LocalFactorError as exc:
            identity = "ggp.z_phi_identity"
            reports.append(VerificationReport.failed_with(identity, {"p": field.p}, exc))
            continue
        reports.append(verify_z_identity(phi, phi_prime))
        reports.append(verify_character_property(phi, phi_prime))
        for muG in (1, -1):
            reports.append(verify_dichotomy(phi, phi_prime, muG))
    logging.info(f"GGP checks over p={field.p} {field.ext_kind.value}: {len(reports)} items")
    return reports


# --- 定数表 ---

def run_constant_checks(field: FieldConfig,
                        tolerance: float = CONSTANT_TOLERANCE) -> List[VerificationReport]:
    """全ての偶奇の組で絶対値 1、奇数同士の c は γ_ψ(N)^(-1) sgn(2) と一致"""
    base = {"p": field.p, "ext": field.ext_kind.value}
    reports = []
    try:
        psi = standard_additive_character(field, 0)
        gamma = gamma_norm_form(field, psi)
        live = gamma.inverse() * UnitComplex.from_phase(Phase.from_sign(sgn_EF(field, field.element(2))))
        for query in ("c_pair", "s_ratio", "gamma_TE"):
            for first in (1, 2):
                for second in (1, 2):
                    for quasi_split in ((True, False) if query == "gamma_TE" else (True,)):
                        value = constants_table(field, query, first, second, quasi_split)
                        identity = "constants.unit_modulus"
                        inputs = dict(base, query=query, first=first, second=second,
                                      quasi_split=quasi_split)
                        reports.append(VerificationReport.compare(
                            identity, inputs, abs(value.value), 1.0, tolerance))
        odd = c_pair(field, 1, 3)
    except LocalFactorError as exc:
        identity = "constants.unit_modulus"
        return reports + [VerificationReport.failed_with(identity, base, exc)]

    identity = "constants.c_pair_live"
    reports.append(VerificationReport.compare(identity, base, odd, live, tolerance))
    identity = "constants.c_pair_square"
    reports.append(VerificationReport.compare(identity, base, odd ** 2,
                                              gamma.inverse() ** 2, tolerance))
    identity = "constants.non_quasi_split_even"
    reports.append(VerificationReport.compare(
        identity, base, constants_table(field, "gamma_TE", 2, 4, quasi_split=False), -1.0,
        tolerance))
    return reports
