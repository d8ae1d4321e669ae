"""Exception taxonomy for field construction, character sums, and trace formulas.

``NotApplicable`` subclasses carry a machine-readable ``reason`` string that
report generators surface as a skip reason instead of a failure.
"""

from __future__ import annotations


class NoDiscreteLog(ValueError):
    """Raised when the discrete log of the zero element is requested."""


class InvalidFieldParameters(ValueError):
    """Bad build parameters: p not an odd prime, q too small, or q over the size cap."""


class PrecisionFailure(ArithmeticError):
    """A complex trace failed the rounding contract (or a bound check)."""


class NotApplicable(Exception):
    """A formula's preconditions do not hold for the given inputs."""

    reason = "not_applicable"


class WrongCongruence(NotApplicable):
    reason = "wrong_congruence"


class ZeroCoefficient(NotApplicable):
    """A coefficient that the formula requires to be nonzero is zero."""

    def __init__(self, name: str, message: str = ""):
        super().__init__(message or f"coefficient {name} must be nonzero")
        self.reason = f"zero_{name}"


class NonResidue(NotApplicable):
    reason = "non_residue"


class Singular(NotApplicable):
    reason = "singular"


class ExcludedQ(NotApplicable):
    reason = "excluded_q"


class NoNonzeroRoot(NotApplicable):
    reason = "no_nonzero_root"


class CharacteristicThree(NotApplicable):
    reason = "characteristic_three"


class TrivialCharacter(NotApplicable):
    reason = "trivial_character"


class ZeroArgument(NotApplicable):
    reason = "zero_argument"
