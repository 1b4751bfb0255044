"""Exception types shared across the package."""


class MultiCurveError(Exception):
    """Base class for all errors raised by this package."""


class ParameterMismatch(MultiCurveError):
    """Operands live over different rings, or required parameters are missing."""


class DomainError(MultiCurveError):
    """Input outside the mathematical domain of the operation."""


class PrecisionError(MultiCurveError):
    """A length-valued result did not stabilize under the N -> N+2 check."""


class ContainmentError(MultiCurveError):
    """A required submodule inclusion does not hold."""


class NotInvertibleError(MultiCurveError):
    """Module is not generalized invertible (some graded rank is not 1)."""


class ShapeError(MultiCurveError):
    """Module is not of the shape required by a normal-form operation."""


class MoveNotApplicable(MultiCurveError):
    """Preconditions of a deformation move fail on the given configuration."""


class UnsupportedConfig(MultiCurveError):
    """No formula is available for this configuration (e.g. n >= 4 non-special)."""


class MissingInput(MultiCurveError):
    """An input required in this parameter regime was not supplied."""


class EnumerationLimit(MultiCurveError):
    """An enumeration would exceed its configured ceiling."""


class NoStableObjects(MultiCurveError):
    """delta <= 0: no stable generalized line bundles exist."""


class VerificationError(MultiCurveError):
    """An internal cross-check (oracle vs closed form, dual consistency) failed."""
