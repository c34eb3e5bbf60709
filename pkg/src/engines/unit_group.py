"""
Unit Group Engine

(O/p^m)^× の構造（馴順部分 × p 部分）と離散対数テーブル
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple, Union

from sympy import factorint, primitive_root

from data_structures.errors import PrecisionExhausted, UnitGroupTooLarge
from data_structures.local_field import ElementE, ElementF, FieldConfig

# テーブルサイズの上限
MAX_TABLE_SIZE = 10 ** 6

Key = Union[int, Tuple[int, int]]


class ResidueModel:
    """O_F/p^m または O_E/p_E^m の剰余演算

    F のキーは整数、E のキーは (a mod p^ca, b mod p^cb) の組。
    """

    def __init__(self, field: FieldConfig, tag: str, depth: int):
        if tag not in ("F", "E"):
            raise ValueError(f"unknown field tag: {tag}")
        self.field = field
        self.tag = tag
        self.depth = depth
        self.p = field.p
        if tag == "F":
            self.a_mod = self.p ** depth
            self.b_mod = 1
        else:
            a_digits, b_digits = field.key_digits(depth)
            self.a_mod = self.p ** a_digits
            self.b_mod = self.p ** b_digits

    @property
    def residue_size(self) -> int:
        """剰余体の位数"""
        return self.p if self.tag == "F" else self.field.q_E

    @property
    def order(self) -> int:
        """単数群 (O/p^m)^× の位数"""
        if self.depth == 0:
            return 1
        q = self.residue_size
        return (q - 1) * q ** (self.depth - 1)

    @property
    def one(self) -> Key:
        return 1 % self.a_mod if self.tag == "F" else (1 % self.a_mod, 0)

    def reduce(self, key: Key, depth: int) -> Key:
        """より浅い深さへの射影"""
        coarse = ResidueModel(self.field, self.tag, depth)
        if self.tag == "F":
            return key % coarse.a_mod
        return key[0] % coarse.a_mod, key[1] % coarse.b_mod

    def mul(self, x: Key, y: Key) -> Key:
        if self.tag == "F":
            return (x * y) % self.a_mod
        a = (x[0] * y[0] + self.field.theta * x[1] * y[1]) % self.a_mod
        b = (x[0] * y[1] + x[1] * y[0]) % self.b_mod
        return a, b

    def power(self, x: Key, n: int) -> Key:
        if n < 0:
            x = self.inverse(x)
            n = -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            n >>= 1
        return result

    def inverse(self, x: Key) -> Key:
        return self.power(x, self.order - 1)

    def is_unit(self, key: Key) -> bool:
        if self.depth == 0:
            return True
        if self.tag == "F":
            return key % self.p != 0
        if self.field.is_ramified:
            return key[0] % self.p != 0
        return key[0] % self.p != 0 or key[1] % self.p != 0

    def units(self) -> Iterator[Key]:
        """全単数キーを決まった順序で列挙"""
        if self.tag == "F":
            for a in range(self.a_mod):
                if self.is_unit(a):
                    yield a
            return
        for a in range(self.a_mod):
            for b in range(self.b_mod):
                if self.is_unit((a, b)):
                    yield a, b

    def key_of(self, x: Union[ElementF, ElementE]) -> Key:
        """整数元の剰余キー"""
        if self.tag == "F":
            if isinstance(x, ElementE):
                x = x.to_F()
            return x.residue(self.depth)
        if isinstance(x, ElementF):
            x = ElementE.from_f(self.field, x)
        return x.residue_key(self.depth)

    def element_of(self, key: Key) -> Union[ElementF, ElementE]:
        if self.tag == "F":
            return self.field.element(key)
        return self.field.element_e(key[0], key[1])

    def principal_generators(self) -> List[Key]:
        """U^1/U^m を生成する 1 + ϖ^i τ の列"""
        keys: List[Key] = []
        for i in range(1, self.depth):
            if self.tag == "F":
                keys.append((1 + self.p ** i) % self.a_mod)
            elif not self.field.is_ramified:
                keys.append(((1 + self.p ** i) % self.a_mod, 0))
                keys.append((1, self.p ** i % self.b_mod))
            else:
                j, odd = divmod(i, 2)
                theta_power = self.field.theta ** j
                if odd:
                    keys.append((1, theta_power % self.b_mod))
                else:
                    keys.append(((1 + theta_power) % self.a_mod, 0))
        return keys


class UnitGroup:
    """単数群 (O/p^m)^× の基底と離散対数"""

    def __init__(self, field: FieldConfig, tag: str, depth: int):
        self.model = ResidueModel(field, tag, depth)
        self.field = field
        self.tag = tag
        self.depth = depth
        if self.model.order > MAX_TABLE_SIZE:
            raise UnitGroupTooLarge(
                f"unit group of order {self.model.order} exceeds table bound {MAX_TABLE_SIZE}")

        self.generators: List[Key] = []
        self.moduli: List[int] = []
        self._tame_log: Dict[Key, int] = {}
        self._p_table: Dict[Key, Tuple[int, ...]] = {self.model.one: ()}
        self._tame_generator: Key = self.model.one

        if depth >= 1:
            self._build_tame_part()
            self._build_p_part()
        logging.info(f"Unit group {tag} depth={depth} p={field.p} ({field.ext_kind.value}): "
                     f"order={self.model.order}, moduli={self.moduli}")

    # --- 構築 ---

    def _residue_generator(self) -> Key:
        p = self.field.p
        if self.tag == "F" or self.field.is_ramified:
            g = int(primitive_root(p))
            return g if self.tag == "F" else (g, 0)
        residue = ResidueModel(self.field, "E", 1)
        q_minus_one = self.field.q_E - 1
        primes = list(factorint(q_minus_one).keys())
        for candidate in residue.units():
            if all(residue.power(candidate, q_minus_one // ell) != residue.one for ell in primes):
                return candidate
        raise RuntimeError("no generator of the residue field found")

    def _build_tame_part(self) -> None:
        q_minus_one = self.model.residue_size - 1
        p_order = self.model.order // q_minus_one
        g = self._residue_generator()
        tame = self.model.power(g, p_order)
        self._tame_generator = tame
        element = self.model.one
        for k in range(q_minus_one):
            self._tame_log[self.model.reduce(element, 1)] = k
            element = self.model.mul(element, tame)
        self.generators.append(tame)
        self.moduli.append(q_minus_one)

    def _quotient_order(self, x: Key, table: Dict[Key, Tuple[int, ...]]) -> int:
        """P/H における x の位数の p 進指数"""
        k = 0
        while x not in table:
            x = self.model.power(x, self.field.p)
            k += 1
        return k

    def _build_p_part(self) -> None:
        p = self.field.p
        candidates = self.model.principal_generators()
        basis: List[Key] = []
        orders: List[int] = []
        table = dict(self._p_table)
        while True:
            best_k, best_x = 0, None
            for x in candidates:
                k = self._quotient_order(x, table)
                if k > best_k:
                    best_k, best_x = k, x
            if best_x is None:
                break
            step = p ** best_k
            h = self.model.power(best_x, step)
            coords = table[h]
            adjust = self.model.one
            for g, c in zip(basis, coords):
                adjust = self.model.mul(adjust, self.model.power(g, c // step))
            x = self.model.mul(best_x, self.model.inverse(adjust))
            new_table: Dict[Key, Tuple[int, ...]] = {}
            power = self.model.one
            for j in range(step):
                for element, coordinate in table.items():
                    new_table[self.model.mul(element, power)] = coordinate + (j,)
                power = self.model.mul(power, x)
            table = new_table
            basis.append(x)
            orders.append(step)
        self._p_table = table
        self.generators.extend(basis)
        self.moduli.extend(orders)

    # --- 離散対数 ---

    def dlog(self, key: Key) -> Tuple[int, ...]:
        """単数キーの基底に関する指数"""
        if self.depth == 0:
            return ()
        if not self.model.is_unit(key):
            raise ValueError(f"{key} is not a unit modulo depth {self.depth}")
        k = self._tame_log[self.model.reduce(key, 1)]
        principal = self.model.mul(key, self.model.power(self._tame_generator, -k))
        return (k,) + self._p_table[principal]

    def dlog_element(self, x: Union[ElementF, ElementE]) -> Tuple[int, ...]:
        return self.dlog(self.model.key_of(x))

    def compose(self, exponents: Tuple[int, ...]) -> Key:
        """指数から元を復元"""
        result = self.model.one
        for g, e in zip(self.generators, exponents):
            result = self.model.mul(result, self.model.power(g, e))
        return result

    def generator_elements(self) -> List[Union[ElementF, ElementE]]:
        return [self.model.element_of(g) for g in self.generators]

    @property
    def order(self) -> int:
        return self.model.order


@lru_cache(maxsize=None)
def get_unit_group(field: FieldConfig, tag: str, depth: int) -> UnitGroup:
    """キャッシュされた単数群（構築後は読み取り専用）"""
    if depth > field.working_precision:
        raise PrecisionExhausted(f"depth {depth} exceeds working precision {field.working_precision}")
    return UnitGroup(field, tag, depth)
