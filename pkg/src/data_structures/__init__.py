"""
Data Structures Package

局所体の元・指標・パラメータ・L パラメータ・レポートのデータ構造
"""

from .errors import LocalFactorError, ConfigError, InvalidParameter
from .local_field import ExtKind, FieldConfig, ElementF, ElementE
from .characters import (
    Phase,
    UnitComplex,
    ConjugateDualSign,
    AdditiveCharacter,
    MultiplicativeCharacter
)
from .quadratic_forms import QuadraticFormF, hyperbolic_plane, norm_form
from .parameters import XiComponent, XiParameter, EPolynomial, CClass, GammaClass
from .langlands import (
    LParamEntry,
    LParameter,
    ComponentGroup,
    ComponentGroupElement,
    SignCharacter,
    GGPOutcome,
    GGPOutcomeKind
)
from .reports import VerificationReport, SuiteReport, RunConfig, load_run_config

__all__ = [
    "LocalFactorError",
    "ConfigError",
    "InvalidParameter",
    "ExtKind",
    "FieldConfig",
    "ElementF",
    "ElementE",
    "Phase",
    "UnitComplex",
    "ConjugateDualSign",
    "AdditiveCharacter",
    "MultiplicativeCharacter",
    "QuadraticFormF",
    "hyperbolic_plane",
    "norm_form",
    "XiComponent",
    "XiParameter",
    "EPolynomial",
    "CClass",
    "GammaClass",
    "LParamEntry",
    "LParameter",
    "ComponentGroup",
    "ComponentGroupElement",
    "SignCharacter",
    "GGPOutcome",
    "GGPOutcomeKind",
    "VerificationReport",
    "SuiteReport",
    "RunConfig",
    "load_run_config"
]
