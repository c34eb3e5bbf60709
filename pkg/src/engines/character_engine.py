"""
Character Engine

加法指標・乗法指標の評価、導手、F^× への制限、共役双対符号、拡張
"""

import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, List, Optional, Tuple, Union

from data_structures.characters import (
    AdditiveCharacter, ConjugateDualSign, MultiplicativeCharacter, Phase
)
from data_structures.errors import DivisionByZero, NoExtension, PrecisionExhausted
from data_structures.local_field import ElementE, ElementF, FieldConfig
from engines.padic_arithmetic import sgn_EF
from engines.unit_group import get_unit_group

FieldElement = Union[ElementF, ElementE, int, Fraction]


# --- 加法指標 ---

def standard_additive_character(field: FieldConfig, conductor: int = 0) -> AdditiveCharacter:
    """導手 n の F の加法指標 x ↦ e({p^(-n) x}_p)"""
    scale = ElementF.from_fraction(field.p, Fraction(field.p) ** (-conductor), field.working_precision)
    return AdditiveCharacter(field, "F", scale)


def twist_additive(psi: AdditiveCharacter, factor: FieldElement) -> AdditiveCharacter:
    """x ↦ ψ(λx)"""
    return AdditiveCharacter(psi.field, psi.tag, psi.scale * factor, psi.base)


def psi_E(psi: AdditiveCharacter, beta: Optional[ElementE] = None) -> AdditiveCharacter:
    """ψ_E^β(x) = ψ(Tr(βx))（既定 β = 1）"""
    if psi.tag != "F":
        raise ValueError("psi_E needs an additive character of F")
    if beta is None:
        beta = psi.field.element_e(1)
    return AdditiveCharacter(psi.field, "E", beta, psi)


def psi_E_delta(psi: AdditiveCharacter) -> AdditiveCharacter:
    """ψ_E^δ(x) = ψ_E(δx)"""
    return psi_E(psi, psi.field.delta)


def fractional_part(y: ElementF) -> Fraction:
    """p 進小数部分 {y}_p"""
    if y.is_zero():
        if y.precision is not None and y.precision < 0:
            raise PrecisionExhausted("fractional part of an uncertain zero")
        return Fraction(0)
    if y.valuation >= 0:
        return Fraction(0)
    digits = -y.valuation
    if y.precision < digits:
        raise PrecisionExhausted(f"fractional part needs {digits} digits, have {y.precision}")
    modulus = y.p ** digits
    return Fraction(y.unit % modulus, modulus)


def eval_add(psi: AdditiveCharacter, x: FieldElement) -> Phase:
    """ψ(x) を厳密な位相で返す"""
    if psi.tag == "F":
        if isinstance(x, ElementE):
            x = x.to_F()
        y = psi.scale * x
        if not isinstance(y, ElementF):
            y = psi.field.element(y)
        return Phase(fractional_part(y))
    if not isinstance(x, ElementE):
        x = ElementE.from_f(psi.field, x if isinstance(x, ElementF) else psi.field.element(x))
    return eval_add(psi.base, (psi.scale * x).trace())


# --- 乗法指標の評価 ---

def _as_tagged(mu: MultiplicativeCharacter, x: FieldElement) -> Union[ElementF, ElementE]:
    field = mu.field
    if mu.tag == "F":
        if isinstance(x, ElementE):
            return x.to_F()
        return x if isinstance(x, ElementF) else field.element(x)
    if isinstance(x, ElementE):
        return x
    return ElementE.from_f(field, x if isinstance(x, ElementF) else field.element(x))


def phase_of_exponents(mu: MultiplicativeCharacter, logs: Tuple[int, ...]) -> Phase:
    """単数の離散対数から μ(u)"""
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    total = Fraction(0)
    for e, k, n in zip(mu.exponents, logs, group.moduli):
        total += Fraction(e * k, n)
    return Phase(total)


def eval_on_unit_key(mu: MultiplicativeCharacter, key) -> Phase:
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    return phase_of_exponents(mu, group.dlog(key))


def eval_mult(mu: MultiplicativeCharacter, x: FieldElement) -> Phase:
    """μ(x) を厳密な位相で返す"""
    element = _as_tagged(mu, x)
    if element.is_zero():
        raise DivisionByZero("multiplicative character evaluated at zero")
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    if mu.tag == "F":
        v = element.valuation
        key = element.unit_residue(mu.depth) if mu.depth > 0 else 0
    else:
        v, unit = element.unit_part()
        key = unit.residue_key(mu.depth)
    return mu.uniformizer_phase * v + phase_of_exponents(mu, group.dlog(key))


# --- 構成 ---

def trivial_character(field: FieldConfig, tag: str = "E") -> MultiplicativeCharacter:
    return MultiplicativeCharacter(field, tag, 0, (), Phase())


def character_from_function(field: FieldConfig, tag: str, depth: int,
                            values: Callable[[Union[ElementF, ElementE]], Phase]) -> MultiplicativeCharacter:
    """生成元と素元での値から深さ depth の指標を作る"""
    group = get_unit_group(field, tag, depth)
    exponents = []
    for g, n in zip(group.generator_elements(), group.moduli):
        scaled = values(g).exponent * n
        if scaled.denominator != 1:
            raise ValueError(f"value on a generator of order {n} is not an {n}-th root of unity")
        exponents.append(int(scaled) % n)
    uniformizer = field.element(field.p) if tag == "F" else field.uniformizer_e
    return MultiplicativeCharacter(field, tag, depth, tuple(exponents), values(uniformizer))


def lift_to_depth(mu: MultiplicativeCharacter, depth: int) -> MultiplicativeCharacter:
    """同じ指標をより深い深さの基底で表す"""
    if depth == mu.depth:
        return mu
    if depth < mu.depth and conductor(mu) > depth:
        raise ValueError(f"character of conductor {conductor(mu)} does not factor through depth {depth}")
    return character_from_function(mu.field, mu.tag, depth, lambda g: eval_mult(mu, g))


def _common_depth(*characters: MultiplicativeCharacter) -> List[MultiplicativeCharacter]:
    depth = max(c.depth for c in characters)
    return [lift_to_depth(c, depth) for c in characters]


def multiply_characters(mu: MultiplicativeCharacter, nu: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """(μν)(x) = μ(x)ν(x)"""
    if mu.tag != nu.tag:
        raise ValueError("characters of different fields")
    mu, nu = _common_depth(mu, nu)
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    exponents = tuple((a + b) % n for a, b, n in zip(mu.exponents, nu.exponents, group.moduli))
    return MultiplicativeCharacter(mu.field, mu.tag, mu.depth, exponents,
                                   mu.uniformizer_phase + nu.uniformizer_phase)


def power_character(mu: MultiplicativeCharacter, k: int) -> MultiplicativeCharacter:
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    exponents = tuple((a * k) % n for a, n in zip(mu.exponents, group.moduli))
    return MultiplicativeCharacter(mu.field, mu.tag, mu.depth, exponents, mu.uniformizer_phase * k)


def inverse_character(mu: MultiplicativeCharacter) -> MultiplicativeCharacter:
    return power_character(mu, -1)


def conjugate_dual_partner(mu: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """μ^θ(x) = μ(conj x)^(-1)"""
    if mu.tag != "E":
        raise ValueError("conjugate-dual partner is defined for characters of E")
    return character_from_function(mu.field, "E", mu.depth, lambda g: -eval_mult(mu, g.conj()))


def is_trivial(mu: MultiplicativeCharacter) -> bool:
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    return mu.uniformizer_phase.is_trivial() and all(e % n == 0 for e, n in zip(mu.exponents, group.moduli))


def characters_equal(mu: MultiplicativeCharacter, nu: MultiplicativeCharacter) -> bool:
    """指標として等しいか（深さの違いは無視）"""
    if mu.tag != nu.tag or mu.field != nu.field:
        return False
    mu, nu = _common_depth(mu, nu)
    return mu.exponents == nu.exponents and mu.uniformizer_phase == nu.uniformizer_phase


def character_order(mu: MultiplicativeCharacter) -> int:
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    order = mu.uniformizer_phase.order
    for e, n in zip(mu.exponents, group.moduli):
        order = order * Fraction(e, n).denominator // math.gcd(order, Fraction(e, n).denominator)
    return order


def sgn_character(field: FieldConfig) -> MultiplicativeCharacter:
    """sgn_{E/F} を F^× の指標として"""
    depth = 1 if field.is_ramified else 0
    return character_from_function(field, "F", depth, lambda x: Phase.from_sign(sgn_EF(field, x)))


# --- 導手・制限・符号 ---

def conductor(mu: MultiplicativeCharacter) -> int:
    """a(μ): 単数上自明なら 0、そうでなければ μ が自明となる最小の U^m"""
    if mu.depth == 0:
        return 0
    group = get_unit_group(mu.field, mu.tag, mu.depth)
    if all(e % n == 0 for e, n in zip(mu.exponents, group.moduli)):
        return 0
    per_level = 2 if (mu.tag == "E" and not mu.field.is_ramified) else 1
    keys = group.model.principal_generators()
    a = 1
    for level in range(mu.depth - 1, 0, -1):
        level_keys = keys[(level - 1) * per_level: level * per_level]
        if any(not eval_on_unit_key(mu, k).is_trivial() for k in level_keys):
            a = level + 1
            break
    return a


def restrict_to_F(mu: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """μ|_{F^×}"""
    if mu.tag != "E":
        raise ValueError("restriction is defined for characters of E")
    field = mu.field
    depth = -(-mu.depth // field.ramification_index)
    return character_from_function(field, "F", depth,
                                   lambda x: eval_mult(mu, ElementE.from_f(field, x)))


def restriction_is(mu: MultiplicativeCharacter, sgn_power: int) -> bool:
    """μ|_{F^×} = sgn_{E/F}^k か"""
    target = sgn_character(mu.field) if sgn_power % 2 else trivial_character(mu.field, "F")
    return characters_equal(restrict_to_F(mu), target)


def conjugate_dual_sign(mu: MultiplicativeCharacter) -> ConjugateDualSign:
    if restriction_is(mu, 0):
        return ConjugateDualSign.PLUS
    if restriction_is(mu, 1):
        return ConjugateDualSign.MINUS
    return ConjugateDualSign.NONE


# --- 拡張 ---

def minimal_extension_depth(field: FieldConfig, f_conductor: int) -> int:
    """F の導手 m_F の指標が拡張できる E の最小深さ"""
    if f_conductor == 0:
        return 0
    return 2 * f_conductor - 1 if field.is_ramified else f_conductor


def extensions_of(target: MultiplicativeCharacter, depth: Optional[int] = None,
                  max_conductor: Optional[int] = None,
                  max_order: Optional[int] = None) -> Iterator[MultiplicativeCharacter]:
    """target を制限にもつ深さ depth の E の指標を決まった順序で列挙"""
    field = target.field
    needed = minimal_extension_depth(field, conductor(target))
    depth = needed if depth is None else depth
    if depth < needed:
        raise ValueError(f"depth {depth} too small for a target of conductor {conductor(target)}")

    e_group = get_unit_group(field, "E", depth)
    f_depth = -(-depth // field.ramification_index)
    f_group = get_unit_group(field, "F", f_depth)
    f_target = lift_to_depth(target, f_depth)
    constraints = []
    for g in f_group.generator_elements():
        logs = e_group.dlog(e_group.model.key_of(ElementE.from_f(field, g)))
        constraints.append((logs, eval_mult(f_target, g)))

    target_p = eval_mult(target, field.p)
    c = Fraction(field.theta, field.p)

    for exponents in itertools.product(*[range(n) for n in e_group.moduli]):
        ok = True
        for logs, value in constraints:
            total = sum(Fraction(e * k, n) for e, k, n in zip(exponents, logs, e_group.moduli))
            if Phase(total) != value:
                ok = False
                break
        if not ok:
            continue
        if field.is_ramified:
            unit_only = MultiplicativeCharacter(field, "E", depth, tuple(exponents), Phase())
            half = (target_p + eval_mult(unit_only, c)).exponent / 2
            phases = [Phase(half), Phase(half + Fraction(1, 2))]
        else:
            phases = [target_p]
        for uv in phases:
            mu = MultiplicativeCharacter(field, "E", depth, tuple(exponents), uv)
            if max_conductor is not None and conductor(mu) > max_conductor:
                continue
            if max_order is not None and character_order(mu) > max_order:
                continue
            yield mu


def extend_character(target: MultiplicativeCharacter) -> MultiplicativeCharacter:
    """restrict_to_F(μ) = target となる E の指標（決定的な選択）"""
    if target.tag != "F":
        raise ValueError("extend_character needs a character of F")
    for mu in extensions_of(target):
        logging.debug(f"Extension of {target.to_text()} chosen: {mu.to_text()}")
        return mu
    raise NoExtension(f"no extension of {target.to_text()} found")


@lru_cache(maxsize=None)
def restricted_sweep(field: FieldConfig, sgn_power: int, max_conductor: int,
                     max_order: int) -> Tuple[MultiplicativeCharacter, ...]:
    """μ|_{F^×} = sgn^k となる導手 max_conductor 以下・位数 max_order 以下の指標の全体"""
    target = sgn_character(field) if sgn_power % 2 else trivial_character(field, "F")
    depth = max(max_conductor, minimal_extension_depth(field, conductor(target)))
    found = tuple(extensions_of(target, depth=depth, max_conductor=max_conductor, max_order=max_order))
    logging.info(f"Sweep sgn^{sgn_power % 2} over p={field.p} {field.ext_kind.value}: {len(found)} characters")
    return found
