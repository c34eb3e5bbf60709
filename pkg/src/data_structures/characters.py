"""
Character Data Structures

位相（有理数 mod 1）、単位複素数、加法指標と有限位数の乗法指標
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from .local_field import ElementE, ElementF, FieldConfig


@dataclass(frozen=True)
class Phase:
    """exp(2πi·exponent) を表す厳密な位相"""
    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent) % 1)

    @classmethod
    def from_sign(cls, sign: int) -> "Phase":
        if sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {sign}")
        return cls(Fraction(0) if sign == 1 else Fraction(1, 2))

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent - other.exponent)

    def __neg__(self) -> "Phase":
        return Phase(-self.exponent)

    def __mul__(self, n: int) -> "Phase":
        return Phase(self.exponent * n)

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return self.exponent == 0

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def sign(self) -> int:
        """±1 の場合の値"""
        if self.exponent == 0:
            return 1
        if self.exponent == Fraction(1, 2):
            return -1
        raise ValueError(f"phase {self.exponent} is not a sign")

    def to_complex(self) -> complex:
        return cmath.exp(2j * math.pi * float(self.exponent))

    def __str__(self) -> str:
        return str(self.exponent)


@dataclass(frozen=True)
class UnitComplex:
    """絶対値 1 の複素数（既知なら厳密な位相付き）"""
    value: complex
    phase: Optional[Phase] = None

    TOLERANCE = 1e-9

    def __post_init__(self):
        if abs(abs(self.value) - 1) > self.TOLERANCE:
            raise ValueError(f"|{self.value}| differs from 1 by more than {self.TOLERANCE}")

    @classmethod
    def from_phase(cls, phase: Phase) -> "UnitComplex":
        return cls(phase.to_complex(), phase)

    @classmethod
    def one(cls) -> "UnitComplex":
        return cls.from_phase(Phase())

    def __mul__(self, other: "UnitComplex") -> "UnitComplex":
        phase = self.phase + other.phase if self.phase is not None and other.phase is not None else None
        return UnitComplex(self.value * other.value, phase)

    def inverse(self) -> "UnitComplex":
        phase = -self.phase if self.phase is not None else None
        return UnitComplex(self.value.conjugate(), phase)

    def __pow__(self, n: int) -> "UnitComplex":
        phase = self.phase * n if self.phase is not None else None
        return UnitComplex(self.value ** n, phase)

    def close_to(self, other: Union["UnitComplex", complex], tolerance: float = 1e-8) -> bool:
        target = other.value if isinstance(other, UnitComplex) else other
        return abs(self.value - target) <= tolerance


class ConjugateDualSign(str, Enum):
    """共役双対符号"""
    PLUS = "plus"
    MINUS = "minus"
    NONE = "none"

    def as_int(self) -> int:
        if self == ConjugateDualSign.PLUS:
            return 1
        if self == ConjugateDualSign.MINUS:
            return -1
        raise ValueError("sign 'none' has no numeric value")

    @classmethod
    def from_int(cls, value: int) -> "ConjugateDualSign":
        return cls.PLUS if value == 1 else cls.MINUS


@dataclass(frozen=True, eq=False)
class AdditiveCharacter:
    """加法指標

    tag == "F": ψ(x) = e({scale·x}_p)（標準指標の scale 倍）
    tag == "E": ψ_E^β(x) = base(Tr(β x))、scale = β
    """
    field: FieldConfig
    tag: str
    scale: Union[ElementF, ElementE]
    base: Optional["AdditiveCharacter"] = None

    @property
    def conductor(self) -> int:
        """ψ が p^n O 上で自明となる最小の n"""
        if self.tag == "F":
            return -self.scale.valuation
        different = 1 if self.field.is_ramified else 0
        return self.field.ramification_index * self.base.conductor - different - self.scale.val()


@dataclass(frozen=True)
class MultiplicativeCharacter:
    """有限位数の乗法指標

    μ(ϖ^v u) = v·uniformizer_phase + Σ e_i k_i / n_i
    （k_i は深さ depth の単数群基底に関する u の離散対数、n_i は位数）
    """
    field: FieldConfig
    tag: str
    depth: int
    exponents: Tuple[int, ...]
    uniformizer_phase: Phase = Phase()

    def to_text(self) -> str:
        exps = ",".join(str(e) for e in self.exponents)
        return f"{self.tag}:{self.depth}:{exps}:{self.uniformizer_phase.exponent}"

    @classmethod
    def from_text(cls, field: FieldConfig, text: str) -> "MultiplicativeCharacter":
        parts = text.strip().split(":")
        if len(parts) != 4:
            raise ValueError(f"character text must be 'tag:depth:exponents:phase', got {text!r}")
        tag, depth, exps, phase = parts
        exponents = tuple(int(e) for e in exps.split(",") if e.strip())
        return cls(field, tag, int(depth), exponents, Phase(Fraction(phase)))
