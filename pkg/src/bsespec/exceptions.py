"""Exception hierarchy for bsespec.

Every library error derives from :class:`BsespecError` so callers (and the
CLI) can map failures to stable categories.
"""


class BsespecError(Exception):
    """Base class for all bsespec errors."""


class DimensionMismatch(BsespecError):
    """Operands have incompatible shapes."""


class StructureViolation(BsespecError):
    """Input blocks violate the required Hermitian/symmetric structure."""


class NotDefinite(BsespecError):
    """The metric operator is not positive definite; factorization failed."""


class InvalidSteps(BsespecError):
    """Requested iteration count is not a positive integer."""


class ZeroStartVector(BsespecError):
    """The starting vector has zero norm."""


class NotRealField(BsespecError):
    """A real-arithmetic procedure received complex-valued input."""


class IndefiniteInnerProduct(BsespecError):
    """A quadratic form that must stay positive turned negative."""


class BasisNotRetained(BsespecError):
    """Operation requires retained Lanczos vectors but none were kept."""


class InsufficientSteps(BsespecError):
    """Too few recurrence coefficients for the requested construction."""


class BreakdownExact(BsespecError):
    """The recurrence terminated early; the plain rule is already exact."""


class ConvergenceFailure(BsespecError):
    """An eigensolver backend failed to converge."""


class MultipleNonpositiveNodes(BsespecError):
    """More than one quadrature node was nonpositive (at most one may be
    discarded)."""


class OddStepCount(BsespecError):
    """The alternating-parity recurrence requires an even step count."""


class SingularProjection(BsespecError):
    """The projected tridiagonal matrix is numerically singular."""


class NeutralVectorBreakdown(BsespecError):
    """Hard breakdown: a signature-neutral block was encountered."""


class GramFactorizationFailure(BsespecError):
    """The two-dimensional block Gram matrix admits no structured
    factorization."""


class ZeroNormCurve(BsespecError):
    """A curve with zero L2 norm cannot form an angle."""


class ParseError(BsespecError):
    """A data file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
