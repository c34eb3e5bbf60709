"""
Local Field Data Structures

F = Q_p (p 奇素数) とその二次拡大 E = F(ω) の元を固定精度で表すデータ構造
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import isprime, legendre_symbol

from .errors import DivisionByZero, DomainError, PrecisionExhausted

# 整数・分数を元に変換するときの既定の相対精度（完全ゼロとの演算用）
COERCE_DIGITS = 64

Scalar = Union[int, Fraction]


class ExtKind(str, Enum):
    """二次拡大の種類"""
    UNRAMIFIED = "unramified"    # E = F(√u)
    RAMIFIED_P = "ramified_p"    # E = F(√p)
    RAMIFIED_UP = "ramified_up"  # E = F(√(up))


@lru_cache(maxsize=None)
def smallest_non_residue(p: int) -> int:
    """p を法とする最小の平方非剰余"""
    for u in range(2, p):
        if legendre_symbol(u, p) == -1:
            return u
    raise ValueError(f"no quadratic non-residue modulo {p}")


def p_adic_valuation(n: int, p: int) -> int:
    """0 でない整数の p 進付値"""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FieldConfig(BaseModel):
    """F = Q_p と二次拡大 E の設定"""

    model_config = ConfigDict(frozen=True)

    p: int
    working_precision: int = 20
    ext_kind: ExtKind = ExtKind.UNRAMIFIED

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        if value == 2 or not isprime(value):
            raise ValueError(f"p must be an odd prime, got {value}")
        return value

    @field_validator("working_precision")
    @classmethod
    def _precision_floor(cls, value: int) -> int:
        if value < 8:
            raise ValueError(f"working_precision must be >= 8, got {value}")
        return value

    @property
    def non_residue(self) -> int:
        return smallest_non_residue(self.p)

    @property
    def theta(self) -> int:
        """ω² の値"""
        if self.ext_kind == ExtKind.UNRAMIFIED:
            return self.non_residue
        if self.ext_kind == ExtKind.RAMIFIED_P:
            return self.p
        return self.non_residue * self.p

    @property
    def is_ramified(self) -> bool:
        return self.ext_kind != ExtKind.UNRAMIFIED

    @property
    def ramification_index(self) -> int:
        return 2 if self.is_ramified else 1

    @property
    def residue_degree(self) -> int:
        return 1 if self.is_ramified else 2

    @property
    def q_E(self) -> int:
        return self.p ** self.residue_degree

    @property
    def non_norm(self) -> int:
        """F^×/N(E^×) の非自明類の代表元"""
        return self.non_residue if self.is_ramified else self.p

    # --- 元の生成 ---

    def element(self, value: Scalar, precision: Optional[int] = None) -> "ElementF":
        return ElementF.from_fraction(self.p, Fraction(value), precision or self.working_precision)

    def element_e(self, a: Union[Scalar, "ElementF"], b: Union[Scalar, "ElementF"] = 0,
                  precision: Optional[int] = None) -> "ElementE":
        prec = precision or self.working_precision
        a_el = a if isinstance(a, ElementF) else ElementF.from_fraction(self.p, Fraction(a), prec)
        b_el = b if isinstance(b, ElementF) else ElementF.from_fraction(self.p, Fraction(b), prec)
        return ElementE(self, a_el, b_el)

    @property
    def delta(self) -> "ElementE":
        """固定されたトレース零元 δ = ω"""
        return self.element_e(0, 1)

    @property
    def uniformizer_e(self) -> "ElementE":
        if self.is_ramified:
            return self.element_e(0, 1)
        return self.element_e(self.p, 0)

    def key_digits(self, depth: int) -> Tuple[int, int]:
        """p_E^depth を法とする剰余キーの (a, b) 桁数"""
        if self.is_ramified:
            return (depth + 1) // 2, depth // 2
        return depth, depth


@dataclass(frozen=True, eq=False)
class ElementF:
    """F = Q_p の元

    0 でない元は valuation と相対精度 precision 桁の unit で表す。
    ゼロは valuation=None で、precision は絶対精度（None なら厳密なゼロ）。
    """
    p: int
    valuation: Optional[int]
    unit: int
    precision: Optional[int]

    # --- 構築 ---

    @classmethod
    def zero(cls, p: int, absolute: Optional[int] = None) -> "ElementF":
        return cls(p, None, 0, absolute)

    @classmethod
    def from_int(cls, p: int, n: int, precision: int) -> "ElementF":
        return cls.from_fraction(p, Fraction(n), precision)

    @classmethod
    def from_fraction(cls, p: int, value: Fraction, precision: int) -> "ElementF":
        if value == 0:
            return cls.zero(p)
        if precision < 1:
            raise PrecisionExhausted(f"precision must be positive, got {precision}")
        num, den = value.numerator, value.denominator
        v_num = p_adic_valuation(num, p)
        v_den = p_adic_valuation(den, p)
        num //= p ** v_num
        den //= p ** v_den
        modulus = p ** precision
        unit = (num * pow(den, -1, modulus)) % modulus
        return cls(p, v_num - v_den, unit, precision)

    @classmethod
    def from_text(cls, p: int, text: str, precision: int) -> "ElementF":
        return cls.from_fraction(p, Fraction(text.strip()), precision)

    # --- 基本的な性質 ---

    def is_zero(self) -> bool:
        return self.valuation is None

    def is_exact_zero(self) -> bool:
        return self.valuation is None and self.precision is None

    def val(self) -> Union[int, float]:
        return math.inf if self.valuation is None else self.valuation

    @property
    def abs_precision(self) -> Union[int, float]:
        """絶対精度（この桁数まで確定）"""
        if self.valuation is None:
            return math.inf if self.precision is None else self.precision
        return self.valuation + self.precision

    def abs_value(self) -> Fraction:
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def balanced_unit(self) -> int:
        modulus = self.p ** self.precision
        return self.unit - modulus if self.unit > modulus // 2 else self.unit

    def to_fraction(self) -> Fraction:
        """代表となる有理数"""
        if self.valuation is None:
            return Fraction(0)
        return self.balanced_unit() * Fraction(self.p) ** self.valuation

    def residue(self, digits: int) -> int:
        """p^digits を法とする剰余（整数元のみ）"""
        if digits <= 0:
            return 0
        if self.valuation is not None and self.valuation < 0:
            raise DomainError("residue of a non-integral element")
        if self.abs_precision < digits:
            raise PrecisionExhausted(
                f"need {digits} absolute digits, have {self.abs_precision}")
        if self.valuation is None or self.valuation >= digits:
            return 0
        return (self.unit * self.p ** self.valuation) % self.p ** digits

    def unit_residue(self, digits: int) -> int:
        """単数部分の p^digits を法とする剰余"""
        if self.valuation is None:
            raise DivisionByZero("unit part of zero")
        if digits > self.precision:
            raise PrecisionExhausted(f"need {digits} unit digits, have {self.precision}")
        return self.unit % self.p ** digits

    # --- 演算 ---

    def _coerce_digits(self, n_val: int) -> int:
        if self.is_exact_zero():
            return COERCE_DIGITS
        if self.valuation is None:
            return max(1, self.precision - n_val)
        return max(1, self.precision, self.valuation + self.precision - n_val)

    def _coerce(self, other) -> "ElementF":
        if isinstance(other, ElementF):
            if other.p != self.p:
                raise ValueError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            if value == 0:
                return ElementF.zero(self.p)
            n_val = p_adic_valuation(value.numerator, self.p) - p_adic_valuation(value.denominator, self.p)
            return ElementF.from_fraction(self.p, value, self._coerce_digits(n_val))
        return NotImplemented

    def __add__(self, other) -> "ElementF":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        absolute = min(self.abs_precision, other.abs_precision)
        nonzero = [x for x in (self, other) if x.valuation is not None]
        if not nonzero:
            return ElementF.zero(self.p, absolute)
        v_min = min(x.valuation for x in nonzero)
        if absolute <= v_min:
            return ElementF.zero(self.p, absolute)
        total = sum(x.unit * self.p ** (x.valuation - v_min) for x in nonzero)
        total %= self.p ** (absolute - v_min)
        if total == 0:
            return ElementF.zero(self.p, absolute)
        shift = p_adic_valuation(total, self.p)
        valuation = v_min + shift
        relative = absolute - valuation
        unit = (total // self.p ** shift) % self.p ** relative
        return ElementF(self.p, valuation, unit, relative)

    __radd__ = __add__

    def __neg__(self) -> "ElementF":
        if self.valuation is None:
            return self
        modulus = self.p ** self.precision
        return ElementF(self.p, self.valuation, (-self.unit) % modulus, self.precision)

    def __sub__(self, other) -> "ElementF":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ElementF":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ElementF":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero() or other.is_exact_zero():
            return ElementF.zero(self.p)
        if self.valuation is None and other.valuation is None:
            return ElementF.zero(self.p, self.precision + other.precision)
        if self.valuation is None:
            return ElementF.zero(self.p, self.precision + other.valuation)
        if other.valuation is None:
            return ElementF.zero(self.p, other.precision + self.valuation)
        relative = min(self.precision, other.precision)
        unit = (self.unit * other.unit) % self.p ** relative
        return ElementF(self.p, self.valuation + other.valuation, unit, relative)

    __rmul__ = __mul__

    def inverse(self) -> "ElementF":
        if self.valuation is None:
            raise DivisionByZero("inverse of zero in F")
        modulus = self.p ** self.precision
        return ElementF(self.p, -self.valuation, pow(self.unit, -1, modulus), self.precision)

    def __truediv__(self, other) -> "ElementF":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "ElementF":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "ElementF":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.valuation is None:
            if exponent == 0:
                raise DomainError("0 ** 0")
            return self if self.is_exact_zero() else ElementF.zero(self.p, self.precision * exponent)
        modulus = self.p ** self.precision
        return ElementF(self.p, self.valuation * exponent, pow(self.unit, exponent, modulus), self.precision)

    def capped(self, absolute: int) -> "ElementF":
        """絶対精度を absolute 桁以下に落とす（厳密なゼロはそのまま）"""
        if self.is_exact_zero() or absolute >= self.abs_precision:
            return self
        if self.valuation is None or absolute <= self.valuation:
            return ElementF.zero(self.p, absolute)
        relative = absolute - self.valuation
        return ElementF(self.p, self.valuation, self.unit % self.p ** relative, relative)

    def shift(self, k: int) -> "ElementF":
        """p^k 倍"""
        if self.valuation is None:
            return self if self.precision is None else ElementF.zero(self.p, self.precision + k)
        return ElementF(self.p, self.valuation + k, self.unit, self.precision)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return f"ElementF({self.to_text()}, p={self.p})"

    def to_text(self) -> str:
        return str(self.to_fraction())


@dataclass(frozen=True, eq=False)
class ElementE:
    """E = F(ω) の元 a + bω"""
    field: FieldConfig
    a: ElementF
    b: ElementF

    @classmethod
    def from_f(cls, field: FieldConfig, x: Union["ElementF", Scalar]) -> "ElementE":
        if not isinstance(x, ElementF):
            x = field.element(x)
        return cls(field, x, ElementF.zero(field.p))

    @classmethod
    def from_json(cls, field: FieldConfig, data: Dict[str, str]) -> "ElementE":
        prec = field.working_precision
        return cls(field,
                   ElementF.from_text(field.p, str(data.get("a", "0")), prec),
                   ElementF.from_text(field.p, str(data.get("b", "0")), prec))

    def to_json(self) -> Dict[str, str]:
        return {"a": self.a.to_text(), "b": self.b.to_text()}

    def _coerce(self, other) -> "ElementE":
        if isinstance(other, ElementE):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, ElementF):
            return ElementE(self.field, other, ElementF.zero(self.field.p))
        if isinstance(other, (int, Fraction)):
            reference = self.a if not self.a.is_zero() else self.b
            return ElementE(self.field, reference._coerce(other), ElementF.zero(self.field.p))
        return NotImplemented

    # --- 性質 ---

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def in_F(self) -> bool:
        return self.b.is_zero()

    def _scaled(self, value: int, is_b: bool) -> int:
        if self.field.is_ramified:
            return 2 * value + (1 if is_b else 0)
        return value

    def val(self) -> Union[int, float]:
        """E の正規化付値"""
        exact = []
        bounds = []
        for comp, is_b in ((self.a, False), (self.b, True)):
            if comp.valuation is not None:
                exact.append(self._scaled(comp.valuation, is_b))
            elif comp.precision is not None:
                bounds.append(self._scaled(comp.precision, is_b))
        if not exact:
            return math.inf
        value = min(exact)
        if any(bound < value for bound in bounds):
            raise PrecisionExhausted("valuation of E element not certified at working precision")
        return value

    @property
    def abs_precision(self) -> Union[int, float]:
        bounds = [self._scaled(comp.abs_precision, is_b)
                  for comp, is_b in ((self.a, False), (self.b, True))
                  if comp.abs_precision != math.inf]
        return min(bounds) if bounds else math.inf

    def abs_value(self) -> Fraction:
        value = self.val()
        if value == math.inf:
            return Fraction(0)
        return Fraction(self.field.q_E) ** (-value)

    # --- 演算 ---

    def __add__(self, other) -> "ElementE":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ElementE(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ElementE":
        return ElementE(self.field, -self.a, -self.b)

    def __sub__(self, other) -> "ElementE":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ElementE":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ElementE":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        theta = self.field.theta
        a = self.a * other.a + (self.b * other.b) * theta
        b = self.a * other.b + self.b * other.a
        return ElementE(self.field, a, b)

    __rmul__ = __mul__

    def conj(self) -> "ElementE":
        return ElementE(self.field, self.a, -self.b)

    def norm(self) -> ElementF:
        return self.a * self.a - (self.b * self.b) * self.field.theta

    def trace(self) -> ElementF:
        return self.a * 2

    def inverse(self) -> "ElementE":
        n = self.norm()
        if n.is_zero():
            raise DivisionByZero("inverse of zero in E")
        n_inv = n.inverse()
        return ElementE(self.field, self.a * n_inv, -(self.b * n_inv))

    def __truediv__(self, other) -> "ElementE":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "ElementE":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "ElementE":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ElementE.from_f(self.field, ElementF.from_int(self.field.p, 1, self._unit_digits()))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def _unit_digits(self) -> int:
        digits = [c.precision for c in (self.a, self.b) if c.valuation is not None]
        return max(digits) if digits else self.field.working_precision

    def capped(self, absolute: int) -> "ElementE":
        """各成分の絶対精度（F の桁）を absolute 以下に落とす"""
        return ElementE(self.field, self.a.capped(absolute), self.b.capped(absolute))

    def times_uniformizer_power(self, k: int) -> "ElementE":
        """ϖ_E^k 倍"""
        if not self.field.is_ramified:
            return ElementE(self.field, self.a.shift(k), self.b.shift(k))
        j, odd = divmod(k, 2)
        theta_power = Fraction(self.field.theta) ** j
        result = ElementE(self.field, self.a * theta_power, self.b * theta_power)
        if odd:
            result = ElementE(self.field, result.b * self.field.theta, result.a)
        return result

    def unit_part(self) -> Tuple[int, "ElementE"]:
        """x = ϖ_E^v · u となる (v, u)"""
        v = self.val()
        if v == math.inf:
            raise DivisionByZero("unit part of zero in E")
        return v, self.times_uniformizer_power(-v)

    def residue_key(self, depth: int) -> Tuple[int, int]:
        """p_E^depth を法とする剰余キー"""
        a_digits, b_digits = self.field.key_digits(depth)
        return self.a.residue(a_digits), self.b.residue(b_digits)

    def to_F(self) -> ElementF:
        if not self.in_F():
            raise DomainError("element has a nonzero ω-component")
        return self.a

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return f"ElementE({self.a.to_text()} + {self.b.to_text()}ω, {self.field.ext_kind.value})"
