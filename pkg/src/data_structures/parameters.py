"""
Parameter Space Data Structures

正則半単純共役類のパラメータ ξ（Dihedral / Split 成分の列）、
E 係数多項式、符号類 C(ξ) とその主等質空間 Γ(ξ) の元
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import DegenerateGamma, DomainError, SingularParameter
from .local_field import ElementE, FieldConfig

# 固有値の衝突判定に使う精度の余裕（F の桁）
COLLISION_MARGIN = 2


class ComponentKind(str, Enum):
    """ξ の成分の種類"""
    DIHEDRAL = "dihedral"  # F_{±i} = F, F_i = E
    SPLIT = "split"        # F_{±i} = E, F_i = E × E


@dataclass(frozen=True, eq=False)
class XiComponent:
    """ξ の一成分（Dihedral は y、Split は a を保持）"""
    kind: ComponentKind
    value: ElementE

    def __post_init__(self):
        if self.value.is_zero():
            raise DomainError("parameter component with zero value")
        if self.kind == ComponentKind.DIHEDRAL and not (self.value.norm() - 1).is_zero():
            raise DomainError("dihedral component must have norm one")

    @classmethod
    def dihedral(cls, y: ElementE) -> "XiComponent":
        return cls(ComponentKind.DIHEDRAL, y)

    @classmethod
    def split(cls, a: ElementE) -> "XiComponent":
        return cls(ComponentKind.SPLIT, a)

    @property
    def field(self) -> FieldConfig:
        return self.value.field

    @property
    def degree(self) -> int:
        return 1 if self.kind == ComponentKind.DIHEDRAL else 2

    def eigenvalues(self) -> List[ElementE]:
        if self.kind == ComponentKind.DIHEDRAL:
            return [self.value]
        return [self.value, self.value.conj().inverse()]

    def to_json(self) -> Dict[str, Any]:
        key = "y" if self.kind == ComponentKind.DIHEDRAL else "a"
        return {"kind": self.kind.value, key: self.value.to_json()}

    @classmethod
    def from_json(cls, field: FieldConfig, data: Dict[str, Any]) -> "XiComponent":
        kind = ComponentKind(data["kind"])
        key = "y" if kind == ComponentKind.DIHEDRAL else "a"
        if key not in data:
            raise DomainError(f"{kind.value} component needs field '{key}'")
        return cls(kind, ElementE.from_json(field, data[key]))


def eigenvalues_collide(x: ElementE, y: ElementE) -> bool:
    """作業精度 - 2 桁まで一致すれば衝突とみなす"""
    difference = x - y
    if difference.is_zero():
        return True
    field = x.field
    return difference.val() >= field.ramification_index * (field.working_precision - COLLISION_MARGIN)


@dataclass(frozen=True, eq=False)
class XiParameter:
    """パラメータ ξ = (I, (F_{±i}), (F_i), (y_i))"""
    field: FieldConfig
    components: Tuple[XiComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for comp in self.components:
            if comp.field != self.field:
                raise DomainError("parameter components over different fields")

    @classmethod
    def empty(cls, field: FieldConfig) -> "XiParameter":
        return cls(field, ())

    @property
    def degree(self) -> int:
        """d_ξ"""
        return sum(comp.degree for comp in self.components)

    @property
    def dihedral_indices(self) -> List[int]:
        """I*（F_i が体となる成分）"""
        return [i for i, comp in enumerate(self.components) if comp.kind == ComponentKind.DIHEDRAL]

    @property
    def dihedral_values(self) -> List[ElementE]:
        return [self.components[i].value for i in self.dihedral_indices]

    def eigenvalues(self) -> List[ElementE]:
        values: List[ElementE] = []
        for comp in self.components:
            values.extend(comp.eigenvalues())
        return values

    def is_regular(self) -> bool:
        values = self.eigenvalues()
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                if eigenvalues_collide(values[i], values[j]):
                    return False
        return True

    def check_regular(self) -> "XiParameter":
        if not self.is_regular():
            raise SingularParameter("parameter has colliding eigenvalues")
        return self

    def disjoint_union(self, other: "XiParameter") -> "XiParameter":
        """ξ ⊔ ξ'"""
        if other.field != self.field:
            raise DomainError("disjoint union of parameters over different fields")
        return XiParameter(self.field, self.components + other.components)

    def with_component(self, component: XiComponent) -> "XiParameter":
        return XiParameter(self.field, self.components + (component,))

    def to_json(self) -> List[Dict[str, Any]]:
        return [comp.to_json() for comp in self.components]

    @classmethod
    def from_json(cls, field: FieldConfig, data: Sequence[Dict[str, Any]]) -> "XiParameter":
        return cls(field, tuple(XiComponent.from_json(field, item) for item in data))


@dataclass(frozen=True, eq=False)
class EPolynomial:
    """E 係数の多項式（係数は低次から）"""
    field: FieldConfig
    coefficients: Tuple[ElementE, ...]

    @classmethod
    def one(cls, field: FieldConfig) -> "EPolynomial":
        return cls(field, (field.element_e(1),))

    @classmethod
    def from_roots(cls, field: FieldConfig, roots: Sequence[ElementE]) -> "EPolynomial":
        """Π (T - r)"""
        poly = cls.one(field)
        for root in roots:
            poly = poly * cls(field, (-root, field.element_e(1)))
        return poly

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __mul__(self, other: "EPolynomial") -> "EPolynomial":
        result: List[Optional[ElementE]] = [None] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                term = a * b
                result[i + j] = term if result[i + j] is None else result[i + j] + term
        return EPolynomial(self.field, tuple(result))

    def __call__(self, x) -> ElementE:
        """Horner 法による評価"""
        if not isinstance(x, ElementE):
            x = ElementE.from_f(self.field, x)
        value = self.coefficients[-1]
        for coefficient in reversed(self.coefficients[:-1]):
            value = value * x + coefficient
        return value

    def derivative(self) -> "EPolynomial":
        if self.degree == 0:
            return EPolynomial(self.field, (self.field.element_e(0),))
        return EPolynomial(self.field, tuple(c * k for k, c in enumerate(self.coefficients) if k > 0))


@dataclass(frozen=True)
class CClass:
    """C(ξ) ≅ {±1}^{I*} の元（ξ の Dihedral 成分ごとの符号）"""
    signs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        for s in self.signs:
            if s not in (1, -1):
                raise DomainError(f"C(xi) coordinates are +1 or -1, got {s}")

    @property
    def parity(self) -> int:
        """座標の積（C(ξ)^1 か C(ξ)^(-1) か）"""
        value = 1
        for s in self.signs:
            value *= s
        return value

    def flip(self, index: int) -> "CClass":
        signs = list(self.signs)
        signs[index] = -signs[index]
        return CClass(tuple(signs))

    def extended(self, sign: int) -> "CClass":
        return CClass(self.signs + (sign,))

    def representatives(self, field: FieldConfig) -> List[int]:
        """F^×/N(E^×) の代表（+1 → 1、-1 → 非ノルム元）"""
        return [1 if s == 1 else field.non_norm for s in self.signs]

    def check_for(self, xi: XiParameter) -> "CClass":
        if len(self.signs) != len(xi.dihedral_indices):
            raise DomainError(f"C(xi) element has {len(self.signs)} coordinates, "
                              f"xi has {len(xi.dihedral_indices)} dihedral components")
        return self

    @classmethod
    def all_for(cls, xi: XiParameter) -> Iterator["CClass"]:
        for signs in product((1, -1), repeat=len(xi.dihedral_indices)):
            yield cls(signs)


@dataclass(frozen=True, eq=False)
class GammaClass:
    """Γ(ξ) の元: Dihedral 成分ごとの γ_i（γ_i/conj(γ_i) = y_i、N(E^×) を法として）"""
    gammas: Tuple[ElementE, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(self.gammas))

    def check_for(self, xi: XiParameter) -> "GammaClass":
        values = xi.dihedral_values
        if len(values) != len(self.gammas):
            raise DomainError(f"Gamma(xi) element has {len(self.gammas)} entries, "
                              f"xi has {len(values)} dihedral components")
        for gamma, y in zip(self.gammas, values):
            if gamma.is_zero() or not (gamma - y * gamma.conj()).is_zero():
                raise DegenerateGamma("gamma / conj(gamma) differs from the eigenvalue")
        return self

    def extended(self, gamma: ElementE) -> "GammaClass":
        return GammaClass(self.gammas + (gamma,))

    def scaled(self, index: int, factor) -> "GammaClass":
        gammas = list(self.gammas)
        gammas[index] = gammas[index] * factor
        return GammaClass(tuple(gammas))

    def to_json(self) -> List[Dict[str, str]]:
        return [gamma.to_json() for gamma in self.gammas]

    @classmethod
    def from_json(cls, field: FieldConfig, data: Sequence[Dict[str, str]]) -> "GammaClass":
        return cls(tuple(ElementE.from_json(field, item) for item in data))
