"""Exceptions raised by the toolkit's domain models."""

__all__ = (
    "ToolkitError",
    "JetDomainError",
    "JetShapeError",
    "OrderOverflowError",
    "NonFiniteError",
    "OutsideRegularLocus",
    "DimensionOverflow",
    "UnsupportedDimension",
    "ExpressionSyntaxError",
    "LoopNotClosed",
    "NotASolution",
    "BordismTableError",
    "ExactnessError",
    "ProjectionError",
    "SamplingError",
)


class ToolkitError(Exception):
    """Base class of all errors raised by the toolkit."""


class JetDomainError(ToolkitError, ValueError):
    """
    Raised when a field or jet operation is undefined at the point,
    e.g. the logarithm of a non-positive value.
    """


class JetShapeError(ToolkitError, ValueError):
    """
    Raised when jets with different dimensions, orders or base points
    are combined.
    """


class OrderOverflowError(ToolkitError, ValueError):
    """Raised when a derivative beyond the jet's truncation order is requested."""


class NonFiniteError(ToolkitError, ArithmeticError):
    """Raised when a computed value is infinite or NaN."""


class OutsideRegularLocus(JetDomainError):
    """
    Raised when a log-form residual is requested at a point where the
    field vanishes or is negative, i.e. outside the open set u != 0.
    """


class DimensionOverflow(ToolkitError, OverflowError):
    """Raised when a dimension count exceeds the representable range."""


class UnsupportedDimension(ToolkitError, ValueError):
    """Raised when an operation is not available for the given dimension."""


class ExpressionSyntaxError(ToolkitError, ValueError):
    """Raised when an expression string can't be parsed."""

    def __init__(self, message: str, position: int = None):
        """Syntax error in an expression string.

        Parameters
        ----------
        message
            Description of the problem.
        position
            Offset in the source string where the problem was found.
        """
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class LoopNotClosed(ToolkitError, ValueError):
    """Raised when the endpoints of an integration loop differ."""


class NotASolution(ToolkitError, ValueError):
    """
    Raised when a sample point of a candidate solution fails the
    residual gate.
    """


class BordismTableError(ToolkitError, ValueError):
    """Raised when a homology or coefficient table is missing a degree."""


class ExactnessError(ToolkitError, ValueError):
    """Raised when a short exact sequence can't exist for the given groups."""


class ProjectionError(ToolkitError, ArithmeticError):
    """Raised when a point can't be projected onto a Brieskorn sphere."""

    def __init__(self, message: str, residuals: tuple = None):
        """Projection failure.

        Parameters
        ----------
        message
            Description of the failure.
        residuals
            The final (polynomial, sphere) residual magnitudes, if any.
        """
        if residuals is not None:
            message = f"{message} (residuals: {residuals[0]:.3e}, {residuals[1]:.3e})"
        super().__init__(message)
        self.residuals = residuals


class SamplingError(ToolkitError, ArithmeticError):
    """Raised when too few sample points converge."""
