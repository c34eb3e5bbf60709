"""
Langlands Engine

指標の和として書かれた L パラメータの成分群・z_φ・ε 指標・GGP の二分法・
重複度の対応と定数表。ε 値は epsilon_engine の Tate ε 因子から計算する。
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from data_structures.characters import (
    AdditiveCharacter, ConjugateDualSign, MultiplicativeCharacter, Phase, UnitComplex
)
from data_structures.errors import EpsilonNotSign, InvalidParameter
from data_structures.langlands import (
    ComponentGroup, ComponentGroupElement, GGPOutcome, GGPOutcomeKind, LParamEntry,
    LParameter, SignCharacter
)
from data_structures.local_field import ElementF, FieldConfig
from engines.character_engine import (
    characters_equal, conjugate_dual_partner, conjugate_dual_sign, eval_mult,
    multiply_characters, power_character, standard_additive_character, trivial_character
)
from engines.epsilon_engine import epsilon_pair
from engines.padic_arithmetic import sgn_EF
from engines.weil_engine import gamma_norm_form

SIGN_TOLERANCE = 1e-6


# --- パラメータの構成 ---

def make_parameter(field: FieldConfig,
                   pieces: Sequence[Tuple[MultiplicativeCharacter, int]]) -> LParameter:
    """(μ_j, ℓ_j) の列から φ を作り、Φ^ε に属することを確かめる"""
    entries: List[LParamEntry] = []
    for mu, multiplicity in pieces:
        if mu.tag != "E" or mu.field != field:
            raise InvalidParameter(f"{mu.to_text()} is not a character of E^x over this field")
        for entry in entries:
            if characters_equal(entry.character, mu):
                raise InvalidParameter(f"{mu.to_text()} appears twice; merge multiplicities")
        entries.append(LParamEntry(mu, multiplicity, conjugate_dual_sign(mu)))
    phi = LParameter(field, tuple(entries))
    validate_parameter(phi)
    return phi


def validate_parameter(phi: LParameter) -> None:
    ambient = phi.ambient_sign
    for entry in phi.entries:
        if entry.sign == ConjugateDualSign.NONE:
            partner = conjugate_dual_partner(entry.character)
            if not any(characters_equal(other.character, partner) and
                       other.multiplicity == entry.multiplicity for other in phi.entries):
                raise InvalidParameter(f"{entry.character.to_text()} is not conjugate-dual "
                                       f"and its partner is missing")
        elif entry.sign != ambient and entry.multiplicity % 2:
            raise InvalidParameter(f"{entry.character.to_text()} has sign {entry.sign.value} "
                                   f"opposite to {ambient.value} and odd multiplicity")


def parameter_from_json(field: FieldConfig, data: Sequence[Dict[str, Any]]) -> LParameter:
    pieces = []
    for item in data:
        try:
            mu = MultiplicativeCharacter.from_text(field, str(item["character"]))
            multiplicity = int(item.get("multiplicity", 1))
        except (KeyError, ValueError) as exc:
            raise InvalidParameter(f"malformed parameter entry {item}: {exc}") from exc
        pieces.append((mu, multiplicity))
    return make_parameter(field, pieces)


def tensor_product(phi: LParameter, phi_prime: LParameter) -> LParameter:
    """φ⊗φ' = ⊕ ℓ_j ℓ'_k μ_j μ'_k（同じ指標はまとめる）"""
    pieces: List[Tuple[MultiplicativeCharacter, int]] = []
    for entry in phi.entries:
        for other in phi_prime.entries:
            mu = multiply_characters(entry.character, other.character)
            multiplicity = entry.multiplicity * other.multiplicity
            for i, (existing, count) in enumerate(pieces):
                if characters_equal(existing, mu):
                    pieces[i] = (existing, count + multiplicity)
                    break
            else:
                pieces.append((mu, multiplicity))
    return make_parameter(phi.field, pieces)


def determinant_character(phi: LParameter) -> MultiplicativeCharacter:
    """det φ = Π μ_j^(ℓ_j)"""
    result = trivial_character(phi.field, "E")
    for entry in phi.entries:
        result = multiply_characters(result, power_character(entry.character, entry.multiplicity))
    return result


# --- 成分群 ---

def component_group(phi: LParameter) -> ComponentGroup:
    return ComponentGroup(tuple(phi.matching_indices))


def z_phi(phi: LParameter) -> ComponentGroupElement:
    """-1 の像: 座標 (-1)^(ℓ_j)"""
    return ComponentGroupElement(tuple((-1) ** phi.entries[j].multiplicity
                                       for j in phi.matching_indices))


def split_element(phi: LParameter, minus_multiplicities: Dict[int, int]) -> ComponentGroupElement:
    """各成分の -1 固有空間の次元 ℓ_j^- から s を作る（座標 (-1)^(ℓ_j^-)）"""
    bits = []
    for j in phi.matching_indices:
        count = minus_multiplicities.get(j, 0)
        if not 0 <= count <= phi.entries[j].multiplicity:
            raise InvalidParameter(f"minus part {count} outside [0, {phi.entries[j].multiplicity}]")
        bits.append((-1) ** count)
    return ComponentGroupElement(tuple(bits))


# --- ε 値 ---

def _snap_sign(value: complex, what: str) -> int:
    for sign in (1, -1):
        if abs(value - sign) <= SIGN_TOLERANCE:
            return sign
    raise EpsilonNotSign(f"{what} = {value} is not +1 or -1")


@lru_cache(maxsize=None)
def _epsilon_pair_cached(mu: MultiplicativeCharacter, mu_prime: MultiplicativeCharacter) -> complex:
    return epsilon_pair(mu, mu_prime)


def _entry_epsilon(entry: LParamEntry, phi_prime: LParameter) -> complex:
    """Π_k ε(μ_j μ'_k)^(ℓ'_k)"""
    value = complex(1.0)
    for other in phi_prime.entries:
        value *= _epsilon_pair_cached(entry.character, other.character) ** other.multiplicity
    return value


def epsilon_of_tensor(phi: LParameter, phi_prime: LParameter) -> int:
    """ε(φ⊗φ') = Π ε(μ_j μ'_k)^(ℓ_j ℓ'_k)"""
    value = complex(1.0)
    for entry in phi.entries:
        value *= _entry_epsilon(entry, phi_prime) ** entry.multiplicity
    return _snap_sign(value, "epsilon(phi x phi')")


def _check_parities(phi: LParameter, phi_prime: LParameter) -> None:
    if (phi.dimension + phi_prime.dimension) % 2 == 0:
        raise InvalidParameter(f"dimensions {phi.dimension} and {phi_prime.dimension} "
                               f"must have opposite parity")


def epsilon_character(phi: LParameter, phi_prime: LParameter) -> SignCharacter:
    """ε_{φ,φ'}(s) = Π_{s_j = -1} (Π_k ε(μ_j μ'_k)^(ℓ'_k))^(ℓ_j)"""
    _check_parities(phi, phi_prime)
    group = component_group(phi)
    entry_signs = []
    for j in group.labels:
        entry = phi.entries[j]
        value = _entry_epsilon(entry, phi_prime) ** entry.multiplicity
        entry_signs.append(_snap_sign(value, f"epsilon factor of {entry.character.to_text()}"))
    values = []
    for s in group.elements():
        value = 1
        for position in s.minus_positions:
            value *= entry_signs[position]
        values.append((s.bits, value))
    return SignCharacter(group, tuple(values))


# --- GGP の二分法 ---

def _check_ggp_input(phi: LParameter, phi_prime: LParameter, muG: int) -> None:
    if phi.dimension % 2 or not phi_prime.dimension % 2:
        raise InvalidParameter(f"need dim phi even and dim phi' odd, got "
                               f"{phi.dimension} and {phi_prime.dimension}")
    if muG not in (1, -1):
        raise InvalidParameter(f"muG must be +1 or -1, got {muG}")


def ggp_dichotomy(phi: LParameter, phi_prime: LParameter, muG: int) -> GGPOutcome:
    """ε(φ⊗φ') ≠ μ(G) なら全て 0、等しければ (ε^G, ε^G') が選ばれる"""
    _check_ggp_input(phi, phi_prime, muG)
    epsilon_product = epsilon_of_tensor(phi, phi_prime)
    if epsilon_product != muG:
        logging.info(f"GGP: epsilon {epsilon_product} != muG {muG}, all multiplicities vanish")
        return GGPOutcome(GGPOutcomeKind.ALL_ZERO, epsilon_product, muG)
    eps_G = epsilon_character(phi, phi_prime)
    eps_Gprime = epsilon_character(phi_prime, phi)
    logging.info(f"GGP: distinguished pair with exponents {eps_G.exponents()} / {eps_Gprime.exponents()}")
    return GGPOutcome(GGPOutcomeKind.DISTINGUISHED, epsilon_product, muG, eps_G, eps_Gprime)


def multiplicity_pairing(phi: LParameter, s: ComponentGroupElement, phi_prime: LParameter,
                         s_prime: ComponentGroupElement, muG: int) -> int:
    """ε^G(s) ε^G'(s') (1 + ε(φ⊗φ') μ(G)) / 2"""
    _check_ggp_input(phi, phi_prime, muG)
    epsilon_product = epsilon_of_tensor(phi, phi_prime)
    if epsilon_product != muG:
        return 0
    return epsilon_character(phi, phi_prime)(s) * epsilon_character(phi_prime, phi)(s_prime)


def _basis_character(exponents: Tuple[int, ...], s: ComponentGroupElement) -> int:
    value = 1
    for a, b in zip(exponents, s.bits):
        if a and b == -1:
            value = -value
    return value


def multiplicity_matrix(phi: LParameter, phi_prime: LParameter,
                        muG: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int]:
    """Fourier 逆変換で各指標の組の重複度を復元する（値は 0 か 1）"""
    _check_ggp_input(phi, phi_prime, muG)
    group = component_group(phi)
    group_prime = component_group(phi_prime)
    epsilon_product = epsilon_of_tensor(phi, phi_prime)
    if epsilon_product == muG:
        eps_G = epsilon_character(phi, phi_prime)
        eps_Gprime = epsilon_character(phi_prime, phi)
        pairing = {(s.bits, t.bits): eps_G(s) * eps_Gprime(t)
                   for s in group.elements() for t in group_prime.elements()}
    else:
        pairing = {(s.bits, t.bits): 0 for s in group.elements() for t in group_prime.elements()}

    matrix = {}
    total_order = group.order * group_prime.order
    for a in product((0, 1), repeat=group.rank):
        for b in product((0, 1), repeat=group_prime.rank):
            acc = 0
            for s in group.elements():
                for t in group_prime.elements():
                    acc += pairing[(s.bits, t.bits)] * _basis_character(a, s) * _basis_character(b, t)
            if acc % total_order:
                raise EpsilonNotSign(f"non-integral multiplicity {acc}/{total_order}")
            matrix[(a, b)] = acc // total_order
    return matrix


# --- 定数表 ---

def _gamma_inverse_sign(field: FieldConfig, value: int, psi: Optional[AdditiveCharacter]) -> UnitComplex:
    psi = psi or standard_additive_character(field, 0)
    gamma = gamma_norm_form(field, psi)
    sign = UnitComplex.from_phase(Phase.from_sign(sgn_EF(field, field.element(value))))
    return gamma.inverse() * sign


def c_pair(field: FieldConfig, d: int, d_prime: int,
           psi: Optional[AdditiveCharacter] = None) -> UnitComplex:
    """c(φ, φ') = γ_ψ(N)^(-1) sgn(2)（d, d' がともに奇数）、それ以外は 1"""
    if d % 2 and d_prime % 2:
        return _gamma_inverse_sign(field, 2, psi)
    return UnitComplex.one()


def s_ratio(field: FieldConfig, d: int, d_prime: int,
            psi: Optional[AdditiveCharacter] = None) -> UnitComplex:
    """γ_ψ(N)^(-1) sgn(-2)（d, d' がともに奇数）、それ以外は 1"""
    if d % 2 and d_prime % 2:
        return _gamma_inverse_sign(field, -2, psi)
    return UnitComplex.one()


def gamma_TE(field: FieldConfig, d_plus: int, d_minus: int, quasi_split: bool = True,
             psi: Optional[AdditiveCharacter] = None) -> UnitComplex:
    """捻られた内視のデータに付く定数"""
    minus_one = UnitComplex.from_phase(Phase.from_sign(-1))
    both_odd = d_plus % 2 == 1 and d_minus % 2 == 1
    both_even = d_plus % 2 == 0 and d_minus % 2 == 0
    if both_odd:
        value = _gamma_inverse_sign(field, -2, psi)
        return value if quasi_split else value * minus_one
    if both_even and not quasi_split:
        return minus_one
    return UnitComplex.one()


CONSTANT_QUERIES = {"c_pair": c_pair, "s_ratio": s_ratio, "gamma_TE": gamma_TE}


def constants_table(field: FieldConfig, query: str, first: int, second: int,
                    quasi_split: bool = True,
                    psi: Optional[AdditiveCharacter] = None) -> UnitComplex:
    """名前で定数を引く（gamma_TE のみ quasi_split を使う）"""
    if query not in CONSTANT_QUERIES:
        raise InvalidParameter(f"unknown constant '{query}', expected one of {sorted(CONSTANT_QUERIES)}")
    if query == "gamma_TE":
        return gamma_TE(field, first, second, quasi_split, psi)
    return CONSTANT_QUERIES[query](field, first, second, psi)


def epsilon_nu1_parameter(phi: LParameter, phi_prime: LParameter, nu1: ElementF) -> complex:
    """det φ(ν1) det φ'(-ν1) ε(φ⊗φ')"""
    twist = eval_mult(determinant_character(phi), nu1) + eval_mult(determinant_character(phi_prime), -nu1)
    return twist.to_complex() * epsilon_of_tensor(phi, phi_prime)
