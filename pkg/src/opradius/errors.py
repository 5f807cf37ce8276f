"""Exception hierarchy for opradius.

Every error raised on purpose by the library derives from
:class:`OpRadiusError`, so callers (and the CLI) can tell library failures
apart from programming errors.
"""


class OpRadiusError(Exception):
    """Base class for all opradius errors."""


class ArgumentError(OpRadiusError, ValueError):
    """An argument is invalid independently of any computation."""


class DimensionMismatch(ArgumentError):
    """Operand shapes are incompatible."""


class InvalidTolerance(ArgumentError):
    """A tolerance is not strictly positive."""


class DomainError(ArgumentError):
    """A parameter or function value is outside its admissible domain."""


class NonpositiveExponent(DomainError):
    pass


class ExponentTooSmall(DomainError):
    pass


class NotHermitian(ArgumentError):
    """Raised when a matrix that must be Hermitian is not.

    ``asymmetry`` holds ``||H - H*||``.
    """

    def __init__(self, msg, asymmetry):
        super().__init__(msg)
        self.asymmetry = asymmetry


class NotPSD(ArgumentError):
    """Raised when a Hermitian matrix has an eigenvalue below the clamp threshold."""

    def __init__(self, msg, min_eigenvalue):
        super().__init__(msg)
        self.min_eigenvalue = min_eigenvalue


class CommutationViolated(ArgumentError):
    """``|T|S = S*|T|`` does not hold; ``residual`` is ``|| |T|S - S*|T| ||``."""

    def __init__(self, msg, residual):
        super().__init__(msg)
        self.residual = residual


class ConvergenceFailure(OpRadiusError):
    """A dense factorization did not converge."""

    def __init__(self, msg, residual=float("nan")):
        super().__init__(msg)
        self.residual = residual


class InvalidSpec(ArgumentError):
    """An ensemble description is malformed."""


class UnknownBound(ArgumentError):
    pass


class UnknownParameter(ArgumentError):
    pass


class HypothesisMismatch(ArgumentError):
    """The inputs do not satisfy the hypotheses a bound requires."""


class ShapeMismatch(ArgumentError):
    pass


class CorruptPayload(ArgumentError):
    pass


class ParseError(ArgumentError):
    """Malformed matrix, block or report JSON."""
