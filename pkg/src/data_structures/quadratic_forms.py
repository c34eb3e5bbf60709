"""
Quadratic Form Data Structures

F 上の対角二次形式 Σ a_i x_i²
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from .errors import DomainError
from .local_field import ElementF, FieldConfig


@dataclass(frozen=True, eq=False)
class QuadraticFormF:
    """非退化な対角二次形式"""
    coefficients: Tuple[ElementF, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        for a in self.coefficients:
            if a.is_zero():
                raise DomainError("degenerate quadratic form: zero coefficient")

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def direct_sum(self, other: "QuadraticFormF") -> "QuadraticFormF":
        return QuadraticFormF(self.coefficients + other.coefficients)

    def negate(self) -> "QuadraticFormF":
        return QuadraticFormF(tuple(-a for a in self.coefficients))

    def scale(self, factor: Union[ElementF, int, Fraction]) -> "QuadraticFormF":
        return QuadraticFormF(tuple(a * factor for a in self.coefficients))

    @classmethod
    def from_values(cls, field: FieldConfig, values) -> "QuadraticFormF":
        return cls(tuple(field.element(v) for v in values))


def hyperbolic_plane(field: FieldConfig) -> QuadraticFormF:
    """⟨1⟩ ⊕ ⟨-1⟩"""
    return QuadraticFormF.from_values(field, [1, -1])


def norm_form(field: FieldConfig, factor: Union[ElementF, int, Fraction] = 1) -> QuadraticFormF:
    """λ·N_{E/F}(a + bω) = λa² - λθb² の対角化"""
    base = QuadraticFormF.from_values(field, [1, -field.theta])
    return base.scale(factor)
