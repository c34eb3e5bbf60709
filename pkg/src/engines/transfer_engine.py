"""
Transfer Factor Engine

パラメータ ξ 上の関数: P_ξ, Δ(ξ), D(ξ), D^d(ξ)、
二つの転送因子（ユニタリ群用と捻られた GL 用）、ζ_a / ζ_b と w(d)
"""

import logging
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Type, Union

from data_structures.characters import MultiplicativeCharacter, Phase, UnitComplex
from data_structures.errors import (
    DomainError, GaloisStabilityViolation, LocalFactorError, RationalityFailure,
    RestrictionMismatch, SingularParameter
)
from data_structures.local_field import ElementE, ElementF, FieldConfig
from data_structures.parameters import (
    COLLISION_MARGIN, CClass, EPolynomial, GammaClass, XiComponent, XiParameter,
    eigenvalues_collide
)
from engines.character_engine import eval_mult, restriction_is
from engines.padic_arithmetic import hilbert90_solution, padic_exp, sgn_EF

FScalar = Union[ElementF, int, Fraction]


def rational_part(x: ElementE, error: Type[LocalFactorError], what: str) -> ElementF:
    """ω 成分が作業精度で消えていることを確かめて F の元として返す"""
    if x.b.is_zero():
        return x.a
    field = x.field
    if x.a.is_zero() or x.b.valuation - x.a.valuation < field.working_precision - COLLISION_MARGIN:
        raise error(f"{what} has a nonzero ω-component")
    return x.a


def P_xi(xi: XiParameter) -> EPolynomial:
    """P_ξ(T) = Π (T - λ)（固有値全体）"""
    return EPolynomial.from_roots(xi.field, xi.eigenvalues())


def _check_not_eigenvalue(xi: XiParameter, point: int) -> None:
    target = xi.field.element_e(point)
    for value in xi.eigenvalues():
        if eigenvalues_collide(value, target):
            raise SingularParameter(f"{point} is an eigenvalue of the parameter")


def Delta(xi: XiParameter) -> Fraction:
    """Δ(ξ) = |P_ξ(1)|_E"""
    _check_not_eigenvalue(xi, 1)
    return P_xi(xi)(1).abs_value()


def _pair_product(field: FieldConfig, values: List[ElementE]) -> ElementE:
    """Π_{j≠k, λ_j≠λ_k} (1 - λ_j λ_k^(-1))"""
    total = field.element_e(1)
    for j, lam_j in enumerate(values):
        for k, lam_k in enumerate(values):
            if j == k or eigenvalues_collide(lam_j, lam_k):
                continue
            total = total * (1 - lam_j / lam_k)
    return total


def D_function(xi: XiParameter) -> Fraction:
    """D(ξ) = |Π_{j≠k}(1 - λ_j/λ_k)|_F"""
    xi.check_regular()
    product_value = _pair_product(xi.field, xi.eigenvalues())
    return rational_part(product_value, GaloisStabilityViolation, "discriminant product").abs_value()


def D_d(xi: XiParameter, d: int) -> Fraction:
    """D^d(ξ): 固有値 1 を d - d_ξ 個加えた多重集合で直接計算する"""
    if d < xi.degree:
        raise DomainError(f"d = {d} is smaller than d_xi = {xi.degree}")
    xi.check_regular()
    if d > xi.degree:
        _check_not_eigenvalue(xi, 1)
    values = xi.eigenvalues() + [xi.field.element_e(1)] * (d - xi.degree)
    product_value = _pair_product(xi.field, values)
    return rational_part(product_value, GaloisStabilityViolation, "discriminant product").abs_value()


def w(d: int) -> int:
    """w(d) = 2^⌊d/2⌋ ⌊d/2⌋!"""
    if d < 0:
        raise ValueError("w(d) needs d >= 0")
    half = d // 2
    return 2 ** half * math.factorial(half)


# --- 転送因子 ---

def _check_restriction(mu: MultiplicativeCharacter, power: int, name: str) -> None:
    if not restriction_is(mu, power):
        raise RestrictionMismatch(f"{name}|F^x must be sgn_E/F^{power % 2}")


def _derivative_at(xi: XiParameter, index: int) -> ElementE:
    """P_ξ'(λ_index) = Π_{j≠index}(λ_index - λ_j)"""
    values = xi.eigenvalues()
    y = values[index]
    result = xi.field.element_e(1)
    for j, other in enumerate(values):
        if j != index:
            result = result * (y - other)
    return result


def _eigenvalue_position(xi: XiParameter, component_index: int) -> int:
    return sum(comp.degree for comp in xi.components[:component_index])


def _common_prefactor(xi_plus: XiParameter, xi_minus: XiParameter,
                      mu_plus: MultiplicativeCharacter,
                      mu_minus: MultiplicativeCharacter) -> Tuple[XiParameter, Phase, ElementE]:
    """(ξ, μ-(P_ξ-(-1))μ+(P_ξ+(-1)), P_ξ(-1))"""
    xi = xi_plus.disjoint_union(xi_minus).check_regular()
    _check_not_eigenvalue(xi, -1)
    phase = eval_mult(mu_minus, P_xi(xi_minus)(-1)) + eval_mult(mu_plus, P_xi(xi_plus)(-1))
    return xi, phase, P_xi(xi)(-1)


def _minus_dihedral(xi_plus: XiParameter, xi_minus: XiParameter) -> List[Tuple[int, int]]:
    """I_-* の各成分 (ξ での成分番号, I* での位置)"""
    offset = len(xi_plus.components)
    plus_count = len(xi_plus.dihedral_indices)
    return [(offset + i, plus_count + k) for k, i in enumerate(xi_minus.dihedral_indices)]


def c_factor_unitary(xi: XiParameter, component_index: int, c_value: FScalar,
                     p_minus_one: ElementE) -> ElementF:
    """ユニタリ群用の C_i（d の偶奇で y_i の冪が変わる）"""
    field = xi.field
    d = xi.degree
    y = xi.components[component_index].value
    derivative = _derivative_at(xi, _eigenvalue_position(xi, component_index))
    value = -(field.delta ** (-d - 1)) * c_value * derivative / p_minus_one
    if d % 2 == 0:
        value = value * y ** (1 - d // 2)
    else:
        value = value * y ** ((1 - d) // 2) * (1 + y)
    return rational_part(value, RationalityFailure, f"C_{component_index}")


def c_factor_twisted(xi: XiParameter, component_index: int, gamma: ElementE,
                     p_minus_one: ElementE) -> ElementF:
    """捻られた場合の C_i（c_i の代わりに γ_i^(-1)）"""
    field = xi.field
    d = xi.degree
    y = xi.components[component_index].value
    derivative = _derivative_at(xi, _eigenvalue_position(xi, component_index))
    value = -(field.delta ** (-d - 1)) * gamma.inverse() * derivative / p_minus_one
    if d % 2 == 0:
        value = value * y ** (1 - d // 2) * (1 + y)
    else:
        value = value * y ** ((3 - d) // 2)
    return rational_part(value, RationalityFailure, f"C_{component_index}")


def transfer_factor_unitary(xi_plus: XiParameter, xi_minus: XiParameter, c: CClass,
                            mu_plus: MultiplicativeCharacter, mu_minus: MultiplicativeCharacter,
                            nu: FScalar, check_restrictions: bool = True) -> UnitComplex:
    """Δ_{μ+,μ-,ν}(ξ+, ξ-, c)"""
    field = xi_plus.field
    if check_restrictions:
        _check_restriction(mu_plus, xi_minus.degree, "mu_plus")
        _check_restriction(mu_minus, xi_plus.degree, "mu_minus")
    xi, phase, p_minus_one = _common_prefactor(xi_plus, xi_minus, mu_plus, mu_minus)
    c.check_for(xi)
    nu_element = nu if isinstance(nu, ElementF) else field.element(nu)
    if nu_element.is_zero():
        raise DomainError("nu must be nonzero")
    representatives = c.representatives(field)
    for component_index, position in _minus_dihedral(xi_plus, xi_minus):
        c_i = c_factor_unitary(xi, component_index, representatives[position], p_minus_one)
        phase = phase + Phase.from_sign(sgn_EF(field, nu_element * c_i))
    return UnitComplex.from_phase(phase)


def transfer_factor_twisted(xi_plus: XiParameter, xi_minus: XiParameter, gamma: GammaClass,
                            mu_plus: MultiplicativeCharacter, mu_minus: MultiplicativeCharacter,
                            check_restrictions: bool = True) -> UnitComplex:
    """Δ_{μ+,μ-}(ξ+, ξ-, γ)"""
    field = xi_plus.field
    if check_restrictions:
        _check_restriction(mu_plus, xi_minus.degree, "mu_plus")
        _check_restriction(mu_minus, xi_plus.degree + 1, "mu_minus")
    xi, phase, p_minus_one = _common_prefactor(xi_plus, xi_minus, mu_plus, mu_minus)
    gamma.check_for(xi)
    for component_index, position in _minus_dihedral(xi_plus, xi_minus):
        c_i = c_factor_twisted(xi, component_index, gamma.gammas[position], p_minus_one)
        phase = phase + Phase.from_sign(sgn_EF(field, c_i))
    return UnitComplex.from_phase(phase)


def default_gamma(xi: XiParameter) -> GammaClass:
    """Hilbert 90 による標準的な γ（y = -1 では δ(1 - y)）"""
    return GammaClass(tuple(hilbert90_solution(y) for y in xi.dihedral_values))


# --- 極限で使うパラメータ ---

def zeta_a(a: ElementE, lam: FScalar) -> XiParameter:
    """ζ_a(λ) = (E, E×E, (e^(λa), e^(-λ conj a)))"""
    if a.trace().is_zero():
        raise DomainError("zeta_a needs Tr(a) != 0")
    return XiParameter(a.field, (XiComponent.split(padic_exp(a * lam)),))


def zeta_b(b: ElementE, lam: FScalar) -> XiParameter:
    """ζ_b(λ) = (F, E, e^(λb))（b はトレース 0）"""
    if b.is_zero() or not b.trace().is_zero():
        raise DomainError("zeta_b needs a nonzero trace-zero b")
    return XiParameter(b.field, (XiComponent.dihedral(padic_exp(b * lam)),))


# --- 入れ替えの符号 ---

def swap_ratio_by_parity(xi_1: XiParameter, xi_2: XiParameter,
                         mu_plus: MultiplicativeCharacter, mu_minus: MultiplicativeCharacter,
                         nu: FScalar) -> Dict[int, Optional[int]]:
    """Δ_{μ+,μ-,ν}(ξ1, ξ2, c) / Δ_{μ-,μ+,ν}(ξ2, ξ1, c) を C(ξ) のパリティ類ごとに測る

    類の中で比が一定ならその符号、一定でなければ None。
    """
    xi = xi_1.disjoint_union(xi_2)
    if xi.degree % 2:
        raise DomainError("the swap ratio is measured for even d")
    n1 = len(xi_1.dihedral_indices)
    ratios: Dict[int, set] = defaultdict(set)
    for c in CClass.all_for(xi):
        swapped = CClass(c.signs[n1:] + c.signs[:n1])
        forward = transfer_factor_unitary(xi_1, xi_2, c, mu_plus, mu_minus, nu)
        backward = transfer_factor_unitary(xi_2, xi_1, swapped, mu_minus, mu_plus, nu)
        ratios[c.parity].add((forward.phase - backward.phase).sign())
    result = {parity: (signs.pop() if len(signs) == 1 else None) for parity, signs in ratios.items()}
    logging.info(f"Swap ratio by parity class: {result}")
    return result
