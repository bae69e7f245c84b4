"""Exception hierarchy shared by all rrspace modules.

Every exception carries a short machine-readable ``code`` so the CLI can
map failures onto exit codes without string matching.
"""


class RRSpaceError(Exception):
    """Base class for all library errors."""

    code = "ERROR"

    def __init__(self, message=""):
        super().__init__(message or self.code)


class FieldMismatchError(RRSpaceError):
    code = "FIELD_MISMATCH"


class DivisionByZeroError(RRSpaceError):
    code = "DIVISION_BY_ZERO"


class ZeroPolynomialError(RRSpaceError):
    code = "ZERO_POLYNOMIAL"


class NoEmbeddingError(RRSpaceError):
    code = "NO_EMBEDDING"


class DegreeTooSmallError(RRSpaceError):
    code = "DEGREE_TOO_SMALL"


class NotAUnitError(RRSpaceError):
    code = "NOT_A_UNIT"


class NotMonicError(RRSpaceError):
    code = "NOT_MONIC"


class ZeroElementError(RRSpaceError):
    code = "ZERO_ELEMENT"


class EdgeNotOnPolygonError(RRSpaceError):
    code = "EDGE_NOT_ON_POLYGON"


class UnboundedInitialError(RRSpaceError):
    code = "UNBOUNDED_INITIAL"


class HypothesisViolatedError(RRSpaceError):
    code = "HYPOTHESIS_VIOLATED"


class NotCoprimeError(RRSpaceError):
    code = "NOT_COPRIME"


class PreconditionViolatedError(RRSpaceError):
    code = "PRECONDITION_VIOLATED"


class CenterNotOnCurveError(RRSpaceError):
    code = "CENTER_NOT_ON_CURVE"


class CurveNotIrreducibleError(RRSpaceError):
    code = "CURVE_NOT_IRREDUCIBLE"


class CurveMismatchError(RRSpaceError):
    code = "CURVE_MISMATCH"


class DegreeMismatchError(RRSpaceError):
    code = "DEGREE_MISMATCH"


class AdjointParityError(RRSpaceError):
    """Internal-consistency failure of the adjoint-degree parity checks."""

    code = "ADJOINT_PARITY"


class WildDerivativeZeroError(RRSpaceError):
    """Both coordinate derivatives of a parametrization vanished; internal bug."""

    code = "WILD_DERIVATIVE_ZERO"


class DuplicatePointsError(RRSpaceError):
    code = "DUPLICATE_POINTS"


class PointOnDenominatorError(RRSpaceError):
    code = "POINT_ON_DENOMINATOR"


class PointNotOnCurveError(RRSpaceError):
    code = "POINT_NOT_ON_CURVE"


class KTooLargeError(RRSpaceError):
    code = "K_TOO_LARGE"


class TooFewSharesError(RRSpaceError):
    code = "TOO_FEW_SHARES"


class SingularSystemError(RRSpaceError):
    code = "SINGULAR_SYSTEM"


class ParseError(RRSpaceError):
    code = "PARSE_ERROR"


class PrecisionUnderflow(RRSpaceError):
    """Retryable: the requested datum is not certified at current precision."""

    code = "PRECISION_UNDERFLOW"


class PrecisionExhausted(RRSpaceError):
    """The configured precision cap was reached before the answer separated."""

    code = "PRECISION_EXHAUSTED"


class InternalError(RRSpaceError):
    """Invariant violation that signals a bug, not a bad input."""

    code = "INTERNAL"
