"""
Epsilon Factor Engine

E^× の指標の L 因子、ゼータ積分、Tate の ε 因子（Gauss 和と関数等式の二通り）
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from data_structures.characters import AdditiveCharacter, MultiplicativeCharacter, Phase
from data_structures.errors import (
    CrossCheckFailure, DomainError, PoleError, UnsupportedTestFunction
)
from data_structures.local_field import ElementF, FieldConfig
from engines.character_engine import (
    conductor, eval_add, eval_mult, eval_on_unit_key, inverse_character, lift_to_depth,
    multiply_characters, psi_E_delta, standard_additive_character
)
from engines.unit_group import ResidueModel

Number = Union[int, float, Fraction]

EPSILON_TOLERANCE = 1e-8


class IndicatorKind(str, Enum):
    """ゼータ積分で扱うテスト関数の種類"""
    BOX = "box"           # 1 + (p^N O_F + δ p^N' O_F) の特性関数
    BALL = "ball"         # p_E^k の特性関数
    ANNULUS = "annulus"   # val_E = k の特性関数
    UNITS = "units"       # O_E^× の特性関数


@dataclass(frozen=True)
class IndicatorFunction:
    """ゼータ積分のテスト関数"""
    kind: IndicatorKind
    n: int = 0
    n_prime: int = 0


def default_psi_prime(field: FieldConfig, psi: Optional[AdditiveCharacter] = None) -> AdditiveCharacter:
    """ψ_E^δ（ψ の既定は導手 0 の標準指標）"""
    return psi_E_delta(psi or standard_additive_character(field, 0))


def _uniformizer_value(mu: MultiplicativeCharacter) -> complex:
    return eval_mult(mu, mu.field.uniformizer_e).to_complex()


def measured_conductor(psi_prime: AdditiveCharacter) -> int:
    """ψ' が p_E^j 上自明となる最小の j を O_E = O_F + ωO_F の生成元で直接調べる"""
    field = psi_prime.field
    base = psi_prime.base
    nominal = psi_prime.conductor
    basis = [field.element_e(1), field.element_e(0, 1)]

    def trivial_at(j: int) -> bool:
        for tau in basis:
            trace = (psi_prime.scale * tau.times_uniformizer_power(j)).trace()
            if not trace.is_zero() and trace.valuation < base.conductor:
                return False
        return True

    j = nominal - 4
    while not trivial_at(j):
        j += 1
    while trivial_at(j - 1):
        j -= 1
    return j


def self_dual_constant(psi_prime: AdditiveCharacter) -> float:
    """dz' = C dz となる C（O_E の測度 1、双対格子 p_E^(n') の測度 q_E^(-n')）"""
    n_prime = measured_conductor(psi_prime)
    if n_prime != psi_prime.conductor:
        raise CrossCheckFailure(f"measured conductor {n_prime} differs from {psi_prime.conductor}")
    # 1_{O_E} の二重 Fourier 変換は C^2 vol(p_E^(n')) 1_{O_E}
    dual_volume = float(psi_prime.field.q_E) ** (-n_prime)
    return (1.0 / dual_volume) ** 0.5


def L_factor(mu: MultiplicativeCharacter, s: Number) -> complex:
    """L(μ, s)"""
    if conductor(mu) > 0:
        return complex(1.0)
    x = _uniformizer_value(mu) * float(mu.field.q_E) ** (-float(s))
    if abs(1 - x) < 1e-12:
        raise PoleError(f"L({mu.to_text()}, {s}) has a pole")
    return 1 / (1 - x)


def zeta_integral(phi: IndicatorFunction, mu: MultiplicativeCharacter, s: Number) -> complex:
    """ζ(Φ, μ, s) = ∫_E Φ(z) μ(z) |z|_E^(s-1) dz"""
    field = mu.field
    q = float(field.q_E)
    s = float(s)
    a = conductor(mu)

    if phi.kind == IndicatorKind.BOX:
        if phi.n < 1 or phi.n_prime < 1:
            raise UnsupportedTestFunction("box test functions need N, N' >= 1")
        return _box_integral(phi.n, phi.n_prime, lift_to_depth(mu, a))

    if phi.kind in (IndicatorKind.ANNULUS, IndicatorKind.UNITS):
        k = phi.n if phi.kind == IndicatorKind.ANNULUS else 0
        if a > 0:
            return complex(0.0)
        return (1 - 1 / q) * _uniformizer_value(mu) ** k * q ** (-k * s)

    if phi.kind == IndicatorKind.BALL:
        if s <= 0:
            raise DomainError("ball zeta integrals converge only for Re(s) > 0")
        if a > 0:
            return complex(0.0)
        ratio = _uniformizer_value(mu) * q ** (-s)
        return (1 - 1 / q) * _uniformizer_value(mu) ** phi.n * q ** (-phi.n * s) / (1 - ratio)

    raise UnsupportedTestFunction(f"unsupported test function {phi.kind}")


def _box_integral(n: int, n_prime: int, mu: MultiplicativeCharacter) -> complex:
    """1 + (p^N + δp^N') 上の μ の積分（|z| = 1）"""
    field = mu.field
    p = field.p
    a_digits, b_digits = field.key_digits(mu.depth)
    top_a = max(n, a_digits)
    top_b = max(n_prime, b_digits)
    counts: Counter = Counter()
    model = ResidueModel(field, "E", mu.depth)
    for i in range(p ** (top_a - n)):
        for j in range(p ** (top_b - n_prime)):
            key = ((1 + p ** n * i) % model.a_mod, (p ** n_prime * j) % model.b_mod)
            counts[eval_on_unit_key(mu, key).exponent] += 1
    total = sum(c * Phase(e).to_complex() for e, c in counts.items())
    return total * float(p) ** (-top_a - top_b)


def _shell_sum(mu: MultiplicativeCharacter, psi_prime: AdditiveCharacter, k: int, resolution: int) -> complex:
    """Σ_{u ∈ (O_E/p_E^R)^×} ψ'(ϖ^k u) μ^(-1)(ϖ^k u)"""
    field = mu.field
    model = ResidueModel(field, "E", resolution)
    shift = mu.uniformizer_phase * k
    counts: Counter = Counter()
    for key in model.units():
        y = model.element_of(key).times_uniformizer_power(k)
        mu_value = shift + eval_on_unit_key(mu, model.reduce(key, mu.depth))
        counts[(eval_add(psi_prime, y) - mu_value).exponent] += 1
    return sum(c * Phase(e).to_complex() for e, c in counts.items())


def epsilon_gauss_sum(mu: MultiplicativeCharacter, psi_prime: AdditiveCharacter,
                      s: Number = Fraction(1, 2)) -> complex:
    """Gauss 和による ε(s, μ, ψ')"""
    a = conductor(mu)
    mu = lift_to_depth(mu, a)
    n_prime = psi_prime.conductor
    q = float(mu.field.q_E)
    s = float(s)
    constant = self_dual_constant(psi_prime)
    if a == 0:
        return constant * _uniformizer_value(mu) ** (-n_prime) * q ** (-n_prime * (1 - s))
    total = _shell_sum(mu, psi_prime, n_prime - a, a)
    return constant * q ** (-a) * q ** ((n_prime - a) * (s - 1)) * total


def fourier_support_box(field: FieldConfig, psi: AdditiveCharacter, n: int, n_prime: int) -> Tuple[int, int]:
    """Φ_{N,N'} の Fourier 変換の台 {val(a) >= ·, val(b) >= ·}（N0 = n(ψ) - val_F(2δ²)）"""
    two_delta_squared = field.element(2 * field.theta)
    n0 = psi.conductor - two_delta_squared.valuation
    return n0 - n_prime, n0 - n


def box_for_depth(field: FieldConfig, depth: int) -> Tuple[int, int]:
    """U_E^depth = 1 + (p^N + δp^N') となる (N, N')"""
    if field.is_ramified:
        return (depth + 1) // 2, depth // 2
    return depth, depth


def epsilon_functional_equation(mu: MultiplicativeCharacter, psi_prime: AdditiveCharacter,
                                s: Number = Fraction(1, 2), depth: Optional[int] = None) -> complex:
    """関数等式 ζ(Φ̂, μ^(-1), 1-s)/L(μ^(-1), 1-s) = ε(s) ζ(Φ, μ, s)/L(μ, s) から ε を取り出す"""
    field = mu.field
    a = conductor(mu)
    mu = lift_to_depth(mu, a)
    minimum = 2 if field.is_ramified else 1
    depth = max(a, minimum) if depth is None else depth
    if depth < max(a, minimum):
        raise UnsupportedTestFunction(f"box depth {depth} below conductor {a}")
    n, n_prime_box = box_for_depth(field, depth)
    phi = IndicatorFunction(IndicatorKind.BOX, n, n_prime_box)

    q = float(field.q_E)
    s_float = float(s)
    conductor_prime = psi_prime.conductor
    support = conductor_prime - depth
    if psi_prime.base is not None and (psi_prime.scale - field.delta).is_zero():
        min_a, min_b = fourier_support_box(field, psi_prime.base, n, n_prime_box)
        if field.is_ramified:
            explicit = min(2 * min_a, 2 * min_b + 1)
        else:
            explicit = min(min_a, min_b)
        if explicit != support:
            raise CrossCheckFailure(f"Fourier support p_E^{explicit} differs from p_E^{support}")

    shells = complex(0.0)
    for k in range(support, conductor_prime):
        resolution = max(a, conductor_prime - k)
        shells += q ** (k * (s_float - 1)) * q ** (-resolution) * _shell_sum(mu, psi_prime, k, resolution)
    if a == 0:
        inverse_value = 1 / _uniformizer_value(mu)
        tail = ((1 - 1 / q) * inverse_value ** conductor_prime * q ** (conductor_prime * (s_float - 1))
                / (1 - inverse_value * q ** (s_float - 1)))
    else:
        tail = complex(0.0)

    constant = self_dual_constant(psi_prime)
    zeta_hat = constant * float(field.p) ** (-n - n_prime_box) * (shells + tail)
    zeta_phi = zeta_integral(phi, mu, s)
    dual_L = L_factor(inverse_character(mu), 1 - Fraction(s))
    return (zeta_hat / dual_L) / (zeta_phi / L_factor(mu, s))


def tate_epsilon(mu: MultiplicativeCharacter, psi_prime: Optional[AdditiveCharacter] = None,
                 tolerance: float = EPSILON_TOLERANCE) -> complex:
    """ε(1/2, μ, ψ')（既定 ψ' = ψ_E^δ）を二通りで計算し照合する"""
    psi_prime = psi_prime or default_psi_prime(mu.field)
    gauss = epsilon_gauss_sum(mu, psi_prime)
    functional = epsilon_functional_equation(mu, psi_prime)
    if abs(gauss - functional) > tolerance:
        raise CrossCheckFailure(f"epsilon of {mu.to_text()}: Gauss sum {gauss} vs "
                                f"functional equation {functional}")
    logging.debug(f"epsilon({mu.to_text()}) = {gauss}")
    return gauss


def epsilon_pair(mu: MultiplicativeCharacter, mu_prime: MultiplicativeCharacter,
                 psi: Optional[AdditiveCharacter] = None) -> complex:
    """ε(μ ⊗ μ') = ε(1/2, μμ', ψ_E^δ)"""
    return tate_epsilon(multiply_characters(mu, mu_prime), default_psi_prime(mu.field, psi))


def epsilon_nu1(mu: MultiplicativeCharacter, mu_prime: MultiplicativeCharacter, nu1: ElementF,
                psi: Optional[AdditiveCharacter] = None) -> complex:
    """ε_ν1(μ, μ') = μ(ν1) μ'(-ν1) ε(μ ⊗ μ')"""
    twist = eval_mult(mu, nu1) + eval_mult(mu_prime, -nu1)
    return twist.to_complex() * epsilon_pair(mu, mu_prime, psi)
