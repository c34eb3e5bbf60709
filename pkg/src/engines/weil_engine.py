"""
Weil Constant Engine

格子積分 I_ψ(L, q) = ∫_L ψ(q(v,v)/2) dv とその位相 γ_ψ(q)
"""

import cmath
from fractions import Fraction
from itertools import product
from typing import List, Tuple

import numpy as np

from data_structures.characters import AdditiveCharacter, Phase, UnitComplex
from data_structures.errors import NoStabilization, PrecisionExhausted
from data_structures.local_field import ElementF, FieldConfig
from data_structures.quadratic_forms import QuadraticFormF, norm_form
from engines.character_engine import eval_add
from engines.unit_group import MAX_TABLE_SIZE

PHASE_TOLERANCE = 1e-9


def gauss_sum(p: int, unit: int, exponent: int) -> complex:
    """Σ_{y mod p^m} e(U y² / p^m)"""
    modulus = p ** exponent
    if modulus > MAX_TABLE_SIZE:
        raise PrecisionExhausted(f"Gauss sum modulus {modulus} exceeds {MAX_TABLE_SIZE}")
    y = np.arange(modulus, dtype=np.int64)
    residues = ((unit % modulus) * ((y * y) % modulus)) % modulus
    return complex(np.exp(2j * np.pi * residues / modulus).sum())


def _coefficient_data(a: ElementF, psi: AdditiveCharacter) -> Tuple[int, ElementF]:
    """c = λa/2 の付値 w と c 自身"""
    c = psi.scale * a / 2
    return c.valuation, c


def _one_dimensional_integral(k: int, a: ElementF, psi: AdditiveCharacter) -> complex:
    """∫_{p^(-k) Z_p} ψ(a x²/2) dx"""
    p = psi.field.p
    w, c = _coefficient_data(a, psi)
    m = 2 * k - w
    volume = float(p) ** k
    if m <= 0:
        return complex(volume)
    if m > c.precision:
        raise PrecisionExhausted(f"lattice scale k={k} needs {m} unit digits, have {c.precision}")
    return volume * float(p) ** (-m) * gauss_sum(p, c.unit_residue(m), m)


def weil_lattice_integral(k: int, q: QuadraticFormF, psi: AdditiveCharacter) -> complex:
    """L = p^(-k)·Z_p^n 上の I_ψ(L, q)"""
    if psi.tag != "F":
        raise ValueError("Weil integrals use an additive character of F")
    if k > psi.field.working_precision:
        raise PrecisionExhausted(f"lattice scale {k} exceeds working precision")
    value = complex(1.0)
    for a in q.coefficients:
        value *= _one_dimensional_integral(k, a, psi)
    return value


def stabilization_scale(q: QuadraticFormF, psi: AdditiveCharacter) -> int:
    """位相が安定する最小の格子スケール"""
    k0 = 0
    for a in q.coefficients:
        w, _ = _coefficient_data(a, psi)
        k0 = max(k0, w // 2 + 1)
    return k0


def _snap_to_eighth_root(value: complex) -> UnitComplex:
    angle = cmath.phase(value) / (2 * np.pi)
    eighth = round(angle * 8)
    if abs(angle * 8 - eighth) < 1e-6:
        return UnitComplex.from_phase(Phase(Fraction(eighth, 8)))
    raise NoStabilization(f"Weil constant phase {angle} is not an eighth root of unity")


def weil_constant(q: QuadraticFormF, psi: AdditiveCharacter) -> UnitComplex:
    """γ_ψ(q) = I_ψ(L,q)/|I_ψ(L,q)|（L 十分大）"""
    k0 = stabilization_scale(q, psi)
    first = weil_lattice_integral(k0, q, psi)
    second = weil_lattice_integral(k0 + 1, q, psi)
    phase_first = first / abs(first)
    phase_second = second / abs(second)
    if abs(phase_first - phase_second) > PHASE_TOLERANCE:
        raise NoStabilization(f"Weil phases differ at k={k0} and k={k0 + 1}: "
                              f"{phase_first} vs {phase_second}")
    return _snap_to_eighth_root(phase_second)


def gamma_norm_form(field: FieldConfig, psi: AdditiveCharacter,
                    factor=1) -> UnitComplex:
    """γ_ψ(λ·N_{E/F})"""
    return weil_constant(norm_form(field, factor), psi)


def brute_force_lattice_integral(k: int, coefficients: List[int], psi: AdditiveCharacter,
                                 depth: int) -> complex:
    """格子 p^(-k)Z_p^n を p^depth を法とする剰余で直接和をとる（検算用）"""
    field = psi.field
    p = field.p
    cells = p ** (k + depth)
    cell_volume = Fraction(p) ** (-depth)
    total = 0j
    for point in product(range(cells), repeat=len(coefficients)):
        value = Fraction(0)
        for a, x in zip(coefficients, point):
            coordinate = Fraction(x, p ** k)
            value += Fraction(a) * coordinate * coordinate / 2
        if value == 0:
            phase = Phase()
        else:
            phase = eval_add(psi, field.element(value))
        total += phase.to_complex()
    return total * float(cell_volume) ** len(coefficients)
