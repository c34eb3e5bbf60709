"""
Transfer Limit Verifier

ξ± に ζ_a(λ)（Split 成分）や ζ_b(λ)（Dihedral 成分）を加えたときの転送因子の振る舞いを検証する。
Split を加える場合は各 λ で厳密な等式、Dihedral を加える場合は λ = p^k (k = k0..k0+3)
で値が安定し、閉じた形の極限と一致することを確かめる。
"""

import logging
import random
from dataclasses import dataclass, field as dataclass_field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from data_structures.characters import MultiplicativeCharacter, Phase, UnitComplex
from data_structures.errors import (
    HypothesisViolation, LocalFactorError, RationalityFailure, SingularParameter,
    StabilizationFailure
)
from data_structures.local_field import ElementE, FieldConfig
from data_structures.parameters import CClass, GammaClass, XiComponent, XiParameter
from data_structures.reports import VerificationReport
from engines.character_engine import (
    conductor, eval_mult, extensions_of, restriction_is, sgn_character, trivial_character
)
from engines.padic_arithmetic import padic_exp, sgn_EF
from engines.transfer_engine import (
    P_xi, default_gamma, rational_part, transfer_factor_twisted, transfer_factor_unitary,
    zeta_a, zeta_b
)

# λ = p^k を評価する点の数
WINDOW = 4


class TransferCase(str, Enum):
    """ξ+ / ξ- のどちらに何を加えるか"""
    SPLIT_PLUS_UNITARY = "split_plus_unitary"
    SPLIT_MINUS_UNITARY = "split_minus_unitary"
    SPLIT_PLUS_TWISTED = "split_plus_twisted"
    SPLIT_MINUS_TWISTED = "split_minus_twisted"
    DIHEDRAL_PLUS_UNITARY = "dihedral_plus_unitary"
    DIHEDRAL_PLUS_TWISTED = "dihedral_plus_twisted"
    DIHEDRAL_MINUS_UNITARY = "dihedral_minus_unitary"
    DIHEDRAL_MINUS_TWISTED = "dihedral_minus_twisted"

    @property
    def is_split(self) -> bool:
        return self.value.startswith("split")

    @property
    def on_plus_side(self) -> bool:
        return "_plus_" in self.value

    @property
    def is_twisted(self) -> bool:
        return self.value.endswith("twisted")


@dataclass(eq=False)
class TransferScenario:
    """一つの検証シナリオ"""
    case: TransferCase
    xi_plus: XiParameter
    xi_minus: XiParameter
    mu_plus: MultiplicativeCharacter
    mu_minus: MultiplicativeCharacter
    signs: CClass = dataclass_field(default_factory=CClass)
    gamma: Optional[GammaClass] = None
    nu: int = 1
    a: Optional[ElementE] = None
    b: Optional[ElementE] = None
    c_b_sign: int = 1

    @property
    def field(self) -> FieldConfig:
        return self.xi_plus.field

    @property
    def c_b(self) -> int:
        return 1 if self.c_b_sign == 1 else self.field.non_norm

    def describe(self) -> Dict[str, Any]:
        return {
            "case": self.case.value,
            "p": self.field.p,
            "ext": self.field.ext_kind.value,
            "xi_plus": self.xi_plus.to_json(),
            "xi_minus": self.xi_minus.to_json(),
            "mu_plus": self.mu_plus.to_text(),
            "mu_minus": self.mu_minus.to_text(),
            "signs": list(self.signs.signs),
            "nu": self.nu,
            "a": self.a.to_json() if self.a is not None else None,
            "b": self.b.to_json() if self.b is not None else None,
            "c_b": self.c_b_sign,
        }


def check_hypotheses(scenario: TransferScenario) -> None:
    """各場合の仮定（指標の制限・a, b の条件）"""
    case = scenario.case
    d_plus = scenario.xi_plus.degree
    d_minus = scenario.xi_minus.degree
    if case.is_split:
        if scenario.a is None or scenario.a.trace().is_zero():
            raise HypothesisViolation("adding a split block needs a with Tr(a) != 0")
        for name, mu in (("mu_plus", scenario.mu_plus), ("mu_minus", scenario.mu_minus)):
            if not (restriction_is(mu, 0) or restriction_is(mu, 1)):
                raise HypothesisViolation(f"{name} must be trivial on N(E^x)")
        return
    if scenario.b is None or scenario.b.is_zero() or not scenario.b.trace().is_zero():
        raise HypothesisViolation("adding a dihedral block needs a nonzero trace-zero b")
    if case in (TransferCase.DIHEDRAL_PLUS_UNITARY, TransferCase.DIHEDRAL_PLUS_TWISTED):
        if not restriction_is(scenario.mu_plus, d_minus):
            raise HypothesisViolation(f"mu_plus|F^x must be sgn^{d_minus % 2}")
    elif case == TransferCase.DIHEDRAL_MINUS_UNITARY:
        if not restriction_is(scenario.mu_minus, d_plus):
            raise HypothesisViolation(f"mu_minus|F^x must be sgn^{d_plus % 2}")
    elif not restriction_is(scenario.mu_minus, d_plus + 1):
        raise HypothesisViolation(f"mu_minus|F^x must be sgn^{(d_plus + 1) % 2}")
    if case.is_twisted and scenario.gamma is None:
        raise HypothesisViolation("twisted cases need a Gamma(xi) element")


def _f_valuation(x: ElementE) -> Fraction:
    return Fraction(x.val()) / x.field.ramification_index


def window_start(scenario: TransferScenario) -> int:
    """exp の収束、固有値との距離、指標の導手から k0 を決める"""
    field = scenario.field
    p = field.p
    block = scenario.a if scenario.case.is_split else scenario.b
    points = [block] if scenario.case.is_split else [block, block / 2]
    k_conv = 1
    while any((k_conv + _f_valuation(x)) * (p - 1) <= 1 for x in points):
        k_conv += 1
    xi = scenario.xi_plus.disjoint_union(scenario.xi_minus)
    distance = max([0] + [int((1 - y).val()) for y in xi.eigenvalues()])
    return k_conv + distance + max(conductor(scenario.mu_plus), conductor(scenario.mu_minus)) + 1


def _sgn_of(field: FieldConfig, x: ElementE, what: str) -> Phase:
    return Phase.from_sign(sgn_EF(field, rational_part(x, RationalityFailure, what)))


def _base_value(s: TransferScenario, xi_plus: XiParameter, xi_minus: XiParameter,
                signs: CClass, gamma: Optional[GammaClass]) -> UnitComplex:
    if s.case.is_twisted:
        return transfer_factor_twisted(xi_plus, xi_minus, gamma, s.mu_plus, s.mu_minus,
                                       check_restrictions=False)
    return transfer_factor_unitary(xi_plus, xi_minus, signs, s.mu_plus, s.mu_minus, s.nu,
                                   check_restrictions=False)


def _split_side(s: TransferScenario, k: int) -> Tuple[Phase, Phase]:
    """(左辺, 右辺) at λ = p^k"""
    lam = s.field.p ** k
    block = zeta_a(s.a, lam)
    xi_plus, xi_minus = s.xi_plus, s.xi_minus
    if s.case.on_plus_side:
        xi_plus = xi_plus.disjoint_union(block)
        mu = s.mu_plus
    else:
        xi_minus = xi_minus.disjoint_union(block)
        mu = s.mu_minus
    lhs = _base_value(s, xi_plus, xi_minus, s.signs, s.gamma).phase
    rhs = eval_mult(mu, block.components[0].value) + _base_value(s, s.xi_plus, s.xi_minus, s.signs, s.gamma).phase
    return lhs, rhs


def _dihedral_lhs(s: TransferScenario, k: int) -> Phase:
    field = s.field
    lam = field.p ** k
    block = zeta_b(s.b, lam)
    n_plus = len(s.xi_plus.dihedral_indices)
    signs = s.signs
    gamma = s.gamma
    if s.case.is_twisted:
        entry = padic_exp(s.b * lam / 2) * s.c_b
        if s.case.on_plus_side:
            gamma = GammaClass(gamma.gammas[:n_plus] + (entry,) + gamma.gammas[n_plus:])
        else:
            gamma = gamma.extended(entry)
    elif s.case.on_plus_side:
        signs = CClass(signs.signs[:n_plus] + (s.c_b_sign,) + signs.signs[n_plus:])
    else:
        signs = signs.extended(s.c_b_sign)
    if s.case.on_plus_side:
        return _base_value(s, s.xi_plus.disjoint_union(block), s.xi_minus, signs, gamma).phase
    return _base_value(s, s.xi_plus, s.xi_minus.disjoint_union(block), signs, gamma).phase


def _ratio_sign(xi: XiParameter) -> ElementE:
    """δ^(-d) P_ξ(1) / P_ξ(-1)"""
    field = xi.field
    poly = P_xi(xi)
    return field.delta ** (-xi.degree) * poly(1) / poly(-1)


def dihedral_limit_rhs(s: TransferScenario) -> Phase:
    """極限の閉じた形"""
    field = s.field
    phase = _base_value(s, s.xi_plus, s.xi_minus, s.signs, s.gamma).phase
    d_total = s.xi_plus.degree + s.xi_minus.degree
    if s.case.on_plus_side:
        ratio = _ratio_sign(s.xi_minus)
        return phase + _sgn_of(field, ratio, "delta^-d_minus P(1)/P(-1)")
    ratio = _ratio_sign(s.xi_plus)
    phase = phase + _sgn_of(field, ratio, "delta^-d_plus P(1)/P(-1)")
    if s.case.is_twisted:
        extra = field.element((-1) ** d_total * s.c_b)
    else:
        extra = field.element((-1) ** (d_total + 1) * s.c_b * s.nu)
    return phase + Phase.from_sign(sgn_EF(field, extra))


def verify_transfer_limit(scenario: TransferScenario) -> VerificationReport:
    """一つのシナリオについて左辺と右辺を比較する"""
    check_hypotheses(scenario)
    case = scenario.case
    identity = f"transfer_limit.{case.value}"
    inputs = scenario.describe()
    try:
        k0 = window_start(scenario)
        ks = list(range(k0, k0 + WINDOW))
        inputs["k"] = ks
        if case.is_split:
            pairs = [_split_side(scenario, k) for k in ks]
            lhs = [pair[0] for pair in pairs]
            rhs = [pair[1] for pair in pairs]
            return VerificationReport.check(identity, inputs, lhs == rhs, lhs=lhs, rhs=rhs)
        values = [_dihedral_lhs(scenario, k) for k in ks]
        if any(v != values[0] for v in values):
            raise StabilizationFailure(f"values over k = {ks} do not stabilize: {[str(v) for v in values]}")
        rhs = dihedral_limit_rhs(scenario)
        logging.debug(f"{identity}: window {ks}, limit {values[0]}, closed form {rhs}")
        return VerificationReport.check(identity, inputs, values[0] == rhs, lhs=values, rhs=rhs)
    except LocalFactorError as exc:
        logging.warning(f"{identity} errored: {exc}")
        return VerificationReport.failed_with(identity, inputs, exc)


# --- シナリオ生成 ---

class ScenarioBuilder:
    """小さな ξ± と仮定を満たす指標からなるシナリオを乱数で作る"""

    def __init__(self, field: FieldConfig, rng: random.Random,
                 max_components: int = 2, max_conductor: int = 2, max_order: int = 12):
        self.field = field
        self.rng = rng
        self.max_components = max_components
        self.max_conductor = max_conductor
        self.max_order = max_order
        self._extension_cache: Dict[int, List[MultiplicativeCharacter]] = {}

    def extensions(self, sgn_power: int) -> List[MultiplicativeCharacter]:
        """F^× 上 sgn^k に制限される E^× の指標（深さ 1 以上で列挙）"""
        key = sgn_power % 2
        if key not in self._extension_cache:
            target = sgn_character(self.field) if key else trivial_character(self.field, "F")
            depth = max(1, conductor(target))
            found = list(extensions_of(target, depth=depth, max_conductor=self.max_conductor,
                                       max_order=self.max_order))
            if not found:
                raise HypothesisViolation(f"no extension of sgn^{key} within the sweep bounds")
            self._extension_cache[key] = found
        return self._extension_cache[key]

    def character(self, sgn_power: int) -> MultiplicativeCharacter:
        return self.rng.choice(self.extensions(sgn_power))

    def component(self) -> XiComponent:
        p = self.field.p
        if self.rng.random() < 0.5:
            z = self.field.element_e(self.rng.randrange(1, p), 1)
            return XiComponent.dihedral(z / z.conj())
        while True:
            alpha = self.field.element_e(self.rng.randrange(1, p), self.rng.randrange(0, p))
            if not (alpha.norm() - 1).is_zero():
                return XiComponent.split(alpha)

    def parameter_pair(self) -> Tuple[XiParameter, XiParameter]:
        """正則で ±1 を固有値にもたない (ξ+, ξ-)"""
        for _ in range(200):
            plus = XiParameter(self.field, tuple(self.component()
                                                 for _ in range(self.rng.randint(0, self.max_components))))
            minus = XiParameter(self.field, tuple(self.component()
                                                  for _ in range(self.rng.randint(0, self.max_components))))
            union = plus.disjoint_union(minus)
            if not union.is_regular():
                continue
            if any((1 - y).is_zero() or (1 + y).is_zero() for y in union.eigenvalues()):
                continue
            return plus, minus
        raise SingularParameter("could not draw a regular parameter pair")

    def build(self, case: TransferCase) -> TransferScenario:
        field = self.field
        p = field.p
        xi_plus, xi_minus = self.parameter_pair()
        d_plus, d_minus = xi_plus.degree, xi_minus.degree
        if case.is_split:
            mu_plus = self.character(self.rng.randint(0, 1))
            mu_minus = self.character(self.rng.randint(0, 1))
        elif case.on_plus_side:
            mu_plus = self.character(d_minus)
            mu_minus = self.character(self.rng.randint(0, 1))
        elif case == TransferCase.DIHEDRAL_MINUS_UNITARY:
            mu_plus = self.character(self.rng.randint(0, 1))
            mu_minus = self.character(d_plus)
        else:
            mu_plus = self.character(self.rng.randint(0, 1))
            mu_minus = self.character(d_plus + 1)

        xi = xi_plus.disjoint_union(xi_minus)
        signs = CClass(tuple(self.rng.choice((1, -1)) for _ in xi.dihedral_indices))
        gamma = default_gamma(xi)
        for index in range(len(gamma.gammas)):
            if self.rng.random() < 0.5:
                gamma = gamma.scaled(index, field.non_norm)
        nu = self.rng.choice([1, field.non_norm, p, p * field.non_norm])
        a = field.element_e(self.rng.randrange(1, p), self.rng.randrange(0, p))
        b = field.element_e(0, self.rng.randrange(1, p))
        return TransferScenario(case=case, xi_plus=xi_plus, xi_minus=xi_minus,
                                mu_plus=mu_plus, mu_minus=mu_minus, signs=signs, gamma=gamma,
                                nu=nu, a=a, b=b, c_b_sign=self.rng.choice((1, -1)))
