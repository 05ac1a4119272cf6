"""Custom exceptions for blockadepy."""

from typing import Any, Optional

from blockadepy.core import config

logger = config.get_logger()


class LoggedException(Exception):
    """Base class that automatically logs messages."""

    def __init__(self, message: str) -> None:
        """Initialize a new instance of the LoggedException class.

        Args:
            message: The message to display.
        """
        logger.exception(message)
        super().__init__(message)


class TruncationError(LoggedException):
    """The requested Fock truncation cannot represent the two-photon process."""

    pass


class BasisStateError(LoggedException):
    """A basis state lies outside the Hilbert space it indexes into."""

    pass


class SpaceMismatchError(LoggedException):
    """Operands live on different Hilbert spaces."""

    pass


class UnconstrainedDetuningError(LoggedException):
    """Detunings do not satisfy delta_a = delta_e = 2 * delta_b."""

    pass


class SolverError(LoggedException):
    """Custom exception for failures while computing a steady state."""

    pass


class SingularSystemError(SolverError):
    """The trace-constrained Liouvillian system could not be factorized."""

    pass


class ConvergenceError(SolverError):
    """Time evolution did not reach the steady state before t_max."""

    def __init__(
        self, message: str, residual: float, result: Optional[Any] = None
    ) -> None:
        """Initialize a new instance of the ConvergenceError class.

        Args:
            message: The message to display.
            residual: Norm of the time derivative at the last integrated state.
            result: The last state reached, as a SteadyStateResult, if available.
        """
        self.residual = residual
        self.result = result
        super().__init__(message)


class UndefinedCorrelationError(LoggedException):
    """The mean photon number is too small for g2(0) to be defined."""

    pass


class SweepError(LoggedException):
    """Invalid sweep specification or unusable sweep rows."""

    pass


class ConfigError(LoggedException):
    """The run configuration could not be read or validated."""

    pass


class InvalidFileTypeError(LoggedException):
    """blockadepy did not expect this file extension."""

    pass


class DirectoryNotFoundError(LoggedException):
    """Output save path not found."""

    pass
