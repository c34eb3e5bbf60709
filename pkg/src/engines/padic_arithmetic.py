"""
p-adic Arithmetic Engine

ノルム・トレース、sgn_{E/F}、p 進 exp/log、ノルム 1 トーラスの剰余類代表
"""

import logging
import math
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from sympy import legendre_symbol

from data_structures.errors import DomainError, PrecisionExhausted
from data_structures.local_field import ElementE, ElementF, FieldConfig

FieldElement = Union[ElementF, ElementE]


def norm_trace_conj(x: ElementE) -> Tuple[ElementF, ElementF, ElementE]:
    """(N(x), Tr(x), conj(x))"""
    return x.norm(), x.trace(), x.conj()


def hilbert_symbol(p: int, x: ElementF, y: ElementF) -> int:
    """奇素数 p での Hilbert 記号 (x, y)_p"""
    if x.is_zero() or y.is_zero():
        raise DomainError("Hilbert symbol of zero")
    alpha, beta = x.valuation, y.valuation
    u1 = x.unit_residue(1)
    u2 = y.unit_residue(1)
    sign = (-1) ** ((alpha * beta * (p - 1) // 2) % 2)
    return sign * legendre_symbol(u1, p) ** (beta % 2) * legendre_symbol(u2, p) ** (alpha % 2)


def sgn_EF(field: FieldConfig, x: FieldElement) -> int:
    """sgn_{E/F}(x): x ∈ N(E^×) なら +1"""
    if isinstance(x, ElementE):
        x = x.to_F()
    if x.is_zero():
        raise DomainError("sgn_EF of zero")
    if not field.is_ramified:
        return -1 if x.valuation % 2 else 1
    theta = field.element(field.theta)
    return hilbert_symbol(field.p, x, theta)


def _f_valuation(x: FieldElement) -> Fraction:
    """p を 1 に正規化した付値"""
    if isinstance(x, ElementE):
        return Fraction(x.val()) / x.field.ramification_index
    return Fraction(x.val())


def _absolute_digits(x: FieldElement) -> Union[int, float]:
    if isinstance(x, ElementE):
        return min(x.a.abs_precision, x.b.abs_precision)
    return x.abs_precision


def _one_like(x: FieldElement) -> FieldElement:
    return x * 0 + 1


def padic_exp(x: FieldElement) -> FieldElement:
    """p 進指数関数（v_p(x) > 1/(p-1) で収束）"""
    one = _one_like(x)
    if x.is_zero():
        return one
    p = x.field.p if isinstance(x, ElementE) else x.p
    v = _f_valuation(x)
    if v * (p - 1) <= 1:
        raise DomainError(f"exp does not converge: v_p(x) = {v} <= 1/(p-1)")
    target = _absolute_digits(x)
    if target == math.inf:
        target = x.field.working_precision if isinstance(x, ElementE) else x.precision
    total = one
    term = one
    n = 1
    while True:
        term = term * x / n
        total = total + term
        # 次の項 x^(n+1)/(n+1)! の付値の下界
        if (n + 1) * v - Fraction(n, p - 1) >= target:
            break
        n += 1
    # 打ち切り誤差は p^target で割り切れる
    return total.capped(target)


def padic_log(y: FieldElement) -> FieldElement:
    """p 進対数関数（主単数上）"""
    z = y - 1
    if z.is_zero():
        return z * 0
    p = y.field.p if isinstance(y, ElementE) else y.p
    v = _f_valuation(z)
    if v <= 0:
        raise DomainError("log requires a principal unit")
    target = _absolute_digits(z)
    threshold = math.ceil(1 / (float(v) * math.log(p))) + 1
    total = z * 0
    power = _one_like(z)
    n = 1
    while True:
        power = power * z
        term = power / n if n % 2 else -(power / n)
        total = total + term
        n += 1
        if n >= threshold and n * float(v) - math.log(n, p) >= target:
            break
    return total.capped(target)


def norm_one_reps(field: FieldConfig, depth: int) -> List[ElementE]:
    """Ker N ∩ O_E^× を深さ depth の合同部分群で割った剰余類の代表 (x = z/conj(z))"""
    if depth < 1:
        raise ValueError("depth must be positive")
    if depth > field.working_precision - 2:
        raise PrecisionExhausted(f"depth {depth} exceeds working precision - 2")
    p = field.p
    candidates: List[ElementE] = []
    if field.is_ramified:
        _, b_digits = field.key_digits(depth)
        candidates = [field.element_e(1, b) for b in range(p ** b_digits)]
    else:
        candidates = [field.element_e(1, b) for b in range(p ** depth)]
        candidates += [field.element_e(p * a, 1) for a in range(p ** (depth - 1))]

    reps: Dict[Tuple[int, int], ElementE] = {}
    for z in candidates:
        x = z / z.conj()
        values = [x, -x] if field.is_ramified else [x]
        for value in values:
            key = value.residue_key(depth)
            if key not in reps:
                reps[key] = value

    expected = norm_one_index(field, depth)
    if len(reps) != expected:
        logging.warning(f"norm-one cosets at depth {depth}: found {len(reps)}, expected {expected}")
    return list(reps.values())


def norm_one_index(field: FieldConfig, depth: int) -> int:
    """Ker N ∩ O_E^× における深さ depth の合同部分群の指数"""
    p = field.p
    if field.is_ramified:
        return 2 * p ** (depth // 2)
    return (p + 1) * p ** (depth - 1)


def hilbert90_gamma(y: ElementE) -> ElementE:
    """γ/conj(γ) = y となる γ = 1 + y"""
    if (y + 1).is_zero():
        raise DomainError("hilbert90_gamma undefined at y = -1")
    return y + 1


def hilbert90_solution(y: ElementE) -> ElementE:
    """y = -1 も含めた Hilbert 90 の解（y = -1 では δ(1 - y)）"""
    if (y + 1).is_zero():
        return y.field.delta * (1 - y)
    return hilbert90_gamma(y)
