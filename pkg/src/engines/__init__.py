"""
Engines Package

p 進算術・指標・Weil 定数・ε 因子・トーラス積分・転送因子・符号計算のエンジン
"""

from .epsilon_engine import tate_epsilon, epsilon_pair, epsilon_nu1
from .weil_engine import weil_constant, gamma_norm_form
from .torus_integral import regularized_torus_integral
from .transfer_engine import transfer_factor_unitary, transfer_factor_twisted
from .langlands_engine import ggp_dichotomy, epsilon_character, constants_table

__all__ = [
    "tate_epsilon",
    "epsilon_pair",
    "epsilon_nu1",
    "weil_constant",
    "gamma_norm_form",
    "regularized_torus_integral",
    "transfer_factor_unitary",
    "transfer_factor_twisted",
    "ggp_dichotomy",
    "epsilon_character",
    "constants_table"
]
