"""
Torus Integral Engine

ノルム 1 トーラス上の正則化積分
    S_μ = 2 lim_{s→0+} ∫_{Ker N} μ(δ^(-1)(1-x)) |1-x|_E^(s-1/2) dx
の殻分解による厳密計算と、剰余類の直接和による検算
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from data_structures.characters import MultiplicativeCharacter, Phase
from data_structures.errors import RestrictionMismatch, TailNotResolved
from data_structures.local_field import FieldConfig
from engines.character_engine import (
    conductor, eval_mult, lift_to_depth, restrict_to_F, restriction_is, trivial_character
)
from engines.padic_arithmetic import norm_one_index, norm_one_reps

# 導手を超えて厳密に和をとる殻の数
RESOLUTION_MARGIN = 8


@dataclass
class PhaseSum:
    """Σ weight·e(phase)（weight は有理数）"""
    weights: Dict[Fraction, Fraction] = dataclass_field(default_factory=dict)

    def add(self, phase: Phase, weight: Fraction) -> None:
        self.weights[phase.exponent] = self.weights.get(phase.exponent, Fraction(0)) + weight

    def reduced(self) -> "PhaseSum":
        """e(φ + 1/2) = -e(φ) による厳密な相殺"""
        result: Dict[Fraction, Fraction] = {}
        half = Fraction(1, 2)
        for exponent, weight in self.weights.items():
            base = exponent % half
            signed = weight if exponent < half else -weight
            result[base] = result.get(base, Fraction(0)) + signed
        reduced: Dict[Fraction, Fraction] = {}
        for base, weight in result.items():
            if weight > 0:
                reduced[base] = weight
            elif weight < 0:
                reduced[base + half] = -weight
        return PhaseSum(reduced)

    def is_zero(self) -> bool:
        return not self.reduced().weights

    def to_complex(self) -> complex:
        return sum((float(w) * Phase(e).to_complex() for e, w in self.weights.items()), complex(0.0))


@dataclass
class ShellSum:
    """殻 v = val_E(1 - x) の寄与（|1-x|^t の因子を除く）"""
    shell: int
    total: PhaseSum


@dataclass
class TailDescriptor:
    """殻 start, start+step, ... の幾何級数

    第 n 項 = W e(Φ) q_E^(-start t) · (e(r) w_r q_E^(-step t))^n
    """
    start_shell: int
    step: int
    q_E: int
    leading_weight: Fraction = Fraction(0)
    leading_phase: Phase = Phase()
    ratio_phase: Phase = Phase()
    ratio_weight: Fraction = Fraction(0)
    vanishes: bool = True

    def value(self, t: float) -> complex:
        """t = s + shift での和（解析接続）"""
        if self.vanishes:
            return complex(0.0)
        ratio = self.ratio_phase.to_complex() * float(self.ratio_weight) * float(self.q_E) ** (-self.step * t)
        if abs(1 - ratio) < 1e-12:
            raise TailNotResolved("geometric tail has ratio 1 at the limit point")
        leading = float(self.leading_weight) * self.leading_phase.to_complex() * float(self.q_E) ** (-self.start_shell * t)
        return leading / (1 - ratio)


@dataclass
class RegularizedValue:
    """殻の厳密和・閉じた尾部・s → 0+ での極限値"""
    shell_sums: List[ShellSum]
    tail: TailDescriptor
    limit_at_s0: complex
    shift: Fraction
    normalization: int
    resolution_depth: int

    def shell_value(self, shell: int) -> complex:
        for item in self.shell_sums:
            if item.shell == shell:
                return item.total.to_complex()
        return complex(0.0)


def cayley_constant(field: FieldConfig) -> Fraction:
    """x = (a-δ)/(a+δ) で dx = κ da/|a+δ|_E となる κ"""
    if field.is_ramified:
        return Fraction(1, 2)
    return Fraction(field.p, field.p + 1)


def _shell_cells(field: FieldConfig, a_mu: int, shell: int) -> Iterator[Tuple[Fraction, Fraction, Optional[Fraction]]]:
    """殻の各セル (a の代表, a 測度, 深い殻での単数部分 w)"""
    p = field.p
    if shell == 0:
        if field.is_ramified:
            digits = max(1, -(-(1 + a_mu) // 2))
            for i in range(p ** (digits - 1)):
                yield Fraction(p * i), Fraction(1, p ** digits), None
        else:
            for i in range(p ** a_mu):
                yield Fraction(i), Fraction(1, p ** a_mu), None
        return
    if field.is_ramified:
        if shell % 2 == 0:
            return
        j = (1 - shell) // 2
        digits = max(1, -(-a_mu // 2))
    else:
        j = -shell
        digits = max(1, a_mu)
    scale = Fraction(p) ** j
    for w in range(p ** digits):
        if w % p == 0:
            continue
        yield w * scale, Fraction(1, p ** digits) / scale, Fraction(w)


def _tail_from(mu: MultiplicativeCharacter, start: int, kappa: Fraction,
               unit_restriction_trivial: bool) -> TailDescriptor:
    field = mu.field
    p = field.p
    mu_two = eval_mult(mu, 2)
    mu_p = eval_mult(mu, p)
    if field.is_ramified:
        start = start if start % 2 == 1 else start + 1
        n0 = (start - 1) // 2
        step = 2
    else:
        n0 = start
        step = 1
    if not unit_restriction_trivial:
        return TailDescriptor(start, step, field.q_E)
    return TailDescriptor(
        start_shell=start,
        step=step,
        q_E=field.q_E,
        leading_weight=kappa * (1 - Fraction(1, p)) * Fraction(1, p ** n0),
        leading_phase=mu_two + mu_p * n0,
        ratio_phase=mu_p,
        ratio_weight=Fraction(1, p),
        vanishes=False,
    )


def _predicted_phase(mu: MultiplicativeCharacter, shell: int, w: Fraction) -> Phase:
    field = mu.field
    n = (shell - 1) // 2 if field.is_ramified else shell
    return eval_mult(mu, 2) + eval_mult(mu, field.p) * n - eval_mult(mu, w)


def shell_decomposition(mu: MultiplicativeCharacter, shift: Fraction, normalization: int,
                        extra_depth: int = 0) -> RegularizedValue:
    """殻ごとの厳密和と閉じた尾部から極限値を組み立てる"""
    field = mu.field
    a_mu = conductor(mu)
    mu = lift_to_depth(mu, a_mu)
    kappa = cayley_constant(field)
    delta = field.delta
    mu_two = eval_mult(mu, 2)
    resolution = a_mu + RESOLUTION_MARGIN + extra_depth
    certified_from = max(a_mu, 1)
    unit_trivial = conductor(restrict_to_F(mu)) == 0

    shells: List[ShellSum] = []
    for v in range(resolution + 1):
        total = PhaseSum()
        for a_rep, volume, w in _shell_cells(field, a_mu, v):
            z = delta + a_rep
            phase = mu_two - eval_mult(mu, z)
            if w is not None and v >= certified_from and phase != _predicted_phase(mu, v, w):
                raise TailNotResolved(f"shell {v}: integrand does not follow the deep-shell pattern")
            total.add(phase, kappa * volume / z.abs_value())
        if total.weights:
            shells.append(ShellSum(v, total))

    tail = _tail_from(mu, resolution + 1, kappa, unit_trivial)
    t = float(shift)
    limit = complex(0.0)
    for item in shells:
        limit += item.total.to_complex() * float(field.q_E) ** (-item.shell * t)
    limit += tail.value(t)
    limit *= normalization
    logging.debug(f"torus integral of {mu.to_text()}: {len(shells)} shells, limit {limit}")
    return RegularizedValue(shells, tail, limit, shift, normalization, resolution)


def regularized_torus_integral(mu: MultiplicativeCharacter, extra_depth: int = 0) -> RegularizedValue:
    """S_μ(1,1)（μ|_{F^×} = sgn_{E/F} が前提）"""
    if mu.tag != "E" or not restriction_is(mu, 1):
        raise RestrictionMismatch(f"{mu.to_text()} does not restrict to sgn_E/F on F^×")
    return shell_decomposition(mu, Fraction(-1, 2), 2, extra_depth)


def haar_mass_check(field: FieldConfig) -> RegularizedValue:
    """同じ機構で μ ≡ 1、指数 s の全測度（極限 1）"""
    return shell_decomposition(trivial_character(field, "E"), Fraction(0), 1)


def norm_one_oracle(mu: MultiplicativeCharacter, depth: int) -> Tuple[Dict[int, complex], complex]:
    """剰余類の直接和による殻ごとの値と S_μ(1,1) の検算値

    深さ depth で確定する殻 v <= depth - max(a(μ), 1) のみ直接和をとり、残りは共通の閉じた尾部を使う。
    """
    field = mu.field
    a_mu = conductor(mu)
    mu = lift_to_depth(mu, a_mu)
    exact_limit = depth - max(a_mu, 1)
    index = norm_one_index(field, depth)
    delta_inverse = field.delta.inverse()
    shells: Dict[int, complex] = {}
    for x in norm_one_reps(field, depth):
        one_minus = 1 - x
        if one_minus.is_zero():
            continue
        v = one_minus.val()
        if v > exact_limit:
            continue
        value = eval_mult(mu, delta_inverse * one_minus).to_complex() / index
        shells[v] = shells.get(v, complex(0.0)) + value

    kappa = cayley_constant(field)
    unit_trivial = conductor(restrict_to_F(mu)) == 0
    tail = _tail_from(mu, exact_limit + 1, kappa, unit_trivial)
    t = -0.5
    total = sum((value * float(field.q_E) ** (-v * t) for v, value in shells.items()), complex(0.0))
    total += tail.value(t)
    return shells, 2 * total
