"""
Langlands Parameter Data Structures

指標の和として書かれた L パラメータ φ = ⊕ ℓ_j μ_j、成分群 S_φ = {±1}^{J^ε}、
その元と {±1} 値の指標、GGP の二分法の結果
"""

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .characters import ConjugateDualSign, MultiplicativeCharacter
from .errors import InvalidParameter
from .local_field import FieldConfig


@dataclass(frozen=True)
class LParamEntry:
    """μ_j とその重複度 ℓ_j"""
    character: MultiplicativeCharacter
    multiplicity: int
    sign: ConjugateDualSign

    def __post_init__(self):
        if self.multiplicity < 1:
            raise InvalidParameter(f"multiplicity must be positive, got {self.multiplicity}")

    def to_json(self) -> Dict[str, Any]:
        return {"character": self.character.to_text(), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class LParameter:
    """φ = ⊕ ℓ_j μ_j（ambient_sign は d が奇数なら plus）"""
    field: FieldConfig
    entries: Tuple[LParamEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def dimension(self) -> int:
        return sum(entry.multiplicity for entry in self.entries)

    @property
    def ambient_sign(self) -> ConjugateDualSign:
        return ConjugateDualSign.PLUS if self.dimension % 2 else ConjugateDualSign.MINUS

    @property
    def matching_indices(self) -> List[int]:
        """J^ε: 符号が ambient_sign と一致する成分"""
        return [j for j, entry in enumerate(self.entries) if entry.sign == self.ambient_sign]

    def to_json(self) -> List[Dict[str, Any]]:
        return [entry.to_json() for entry in self.entries]


@dataclass(frozen=True)
class ComponentGroupElement:
    """S_φ の元（J^ε の各成分の ±1）"""
    bits: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(self.bits))
        for b in self.bits:
            if b not in (1, -1):
                raise InvalidParameter(f"component group coordinates are +1 or -1, got {b}")

    def __mul__(self, other: "ComponentGroupElement") -> "ComponentGroupElement":
        if len(self.bits) != len(other.bits):
            raise InvalidParameter("elements of different component groups")
        return ComponentGroupElement(tuple(a * b for a, b in zip(self.bits, other.bits)))

    def is_identity(self) -> bool:
        return all(b == 1 for b in self.bits)

    @property
    def minus_positions(self) -> List[int]:
        return [i for i, b in enumerate(self.bits) if b == -1]


@dataclass(frozen=True)
class ComponentGroup:
    """{±1}^{J^ε}（labels は φ の成分番号）"""
    labels: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def order(self) -> int:
        return 2 ** self.rank

    def identity(self) -> ComponentGroupElement:
        return ComponentGroupElement((1,) * self.rank)

    def elements(self) -> Iterator[ComponentGroupElement]:
        for bits in product((1, -1), repeat=self.rank):
            yield ComponentGroupElement(bits)


@dataclass(frozen=True)
class SignCharacter:
    """S_φ の {±1} 値指標（値の表）"""
    group: ComponentGroup
    values: Tuple[Tuple[Tuple[int, ...], int], ...]

    def __call__(self, s: ComponentGroupElement) -> int:
        return dict(self.values)[s.bits]

    def is_multiplicative(self) -> bool:
        table = dict(self.values)
        for s in self.group.elements():
            for t in self.group.elements():
                if table[(s * t).bits] != table[s.bits] * table[t.bits]:
                    return False
        return True

    def exponents(self) -> Tuple[int, ...]:
        """χ(s) = Π s_j^(a_j) となる a ∈ {0,1}^n"""
        result = []
        for i in range(self.group.rank):
            bits = [1] * self.group.rank
            bits[i] = -1
            result.append(0 if self(ComponentGroupElement(tuple(bits))) == 1 else 1)
        return tuple(result)

    def to_json(self) -> List[Dict[str, Any]]:
        return [{"s": list(bits), "value": value} for bits, value in self.values]


class GGPOutcomeKind(str, Enum):
    ALL_ZERO = "all_zero"
    DISTINGUISHED = "distinguished"


@dataclass(frozen=True)
class GGPOutcome:
    """二分法の結果（DISTINGUISHED は ε(φ⊗φ') = μ(G) のときのみ）"""
    kind: GGPOutcomeKind
    epsilon_product: int
    muG: int
    eps_G: Optional[SignCharacter] = None
    eps_Gprime: Optional[SignCharacter] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "epsilon_product": self.epsilon_product,
            "muG": self.muG,
            "eps_G": self.eps_G.to_json() if self.eps_G else None,
            "eps_Gprime": self.eps_Gprime.to_json() if self.eps_Gprime else None,
        }
