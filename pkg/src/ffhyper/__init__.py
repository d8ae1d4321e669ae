"""Finite-field hypergeometric sums and elliptic-curve trace formulas."""

from .errors import (
    CharacteristicThree,
    ExcludedQ,
    InvalidFieldParameters,
    NoDiscreteLog,
    NoNonzeroRoot,
    NonResidue,
    NotApplicable,
    PrecisionFailure,
    Singular,
    TrivialCharacter,
    WrongCongruence,
    ZeroArgument,
    ZeroCoefficient,
)
from .fields import Field, build_field, prime_powers, primitive_elements

__version__ = "0.1.0"

__all__ = [
    "Field",
    "build_field",
    "prime_powers",
    "primitive_elements",
    "NoDiscreteLog",
    "InvalidFieldParameters",
    "PrecisionFailure",
    "NotApplicable",
    "WrongCongruence",
    "ZeroCoefficient",
    "NonResidue",
    "Singular",
    "ExcludedQ",
    "NoNonzeroRoot",
    "CharacteristicThree",
    "TrivialCharacter",
    "ZeroArgument",
    "__version__",
]
