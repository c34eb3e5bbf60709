"""
Error Hierarchy

局所因子計算で使用する例外クラス
"""


class LocalFactorError(Exception):
    """全ての計算エラーの基底クラス"""


# --- 算術 ---

class PrecisionExhausted(LocalFactorError):
    """作業精度内で有効桁を保証できない"""


class DivisionByZero(LocalFactorError):
    """作業精度でゼロの元による除算"""


class DomainError(LocalFactorError):
    """exp/log などの収束条件・定義域の違反"""


class UnitGroupTooLarge(LocalFactorError):
    """単数群テーブルのサイズ上限 (10^6) を超過"""


# --- 指標・解析 ---

class NoExtension(LocalFactorError):
    """F^× の指標の E^× への拡張が見つからない"""


class NoStabilization(LocalFactorError):
    """格子積分の位相が安定しない"""


class PoleError(LocalFactorError):
    """L 因子の極"""


class UnsupportedTestFunction(LocalFactorError):
    """サポート外のテスト関数"""


class CrossCheckFailure(LocalFactorError):
    """独立な二つの計算が一致しない"""


class TailNotResolved(LocalFactorError):
    """殻和の尾部が閉じた形で確定できない"""


# --- パラメータ空間 ---

class SingularParameter(LocalFactorError):
    """固有値 1（または -1）を持つ、あるいは固有値が衝突するパラメータ"""


class GaloisStabilityViolation(LocalFactorError):
    """F に属すべき積が ω 成分を持つ"""


class RationalityFailure(LocalFactorError):
    """C_i が F^× に属さない"""


class RestrictionMismatch(LocalFactorError):
    """指標の F^× への制限が要求と異なる"""


class DegenerateGamma(LocalFactorError):
    """γ_i / conj(γ_i) != y_i"""


class StabilizationFailure(LocalFactorError):
    """λ 列で極限値が安定しない"""


class HypothesisViolation(LocalFactorError):
    """検証ケースの仮定を満たさない入力"""


# --- L パラメータ ---

class EpsilonNotSign(LocalFactorError):
    """ε 値が ±1 から外れている"""


class InvalidParameter(LocalFactorError):
    """L パラメータの整合性違反"""


# --- ドライバ ---

class ConfigError(LocalFactorError):
    """設定値の不正"""
