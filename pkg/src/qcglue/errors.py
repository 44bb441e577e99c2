"""Exception types shared across the package."""


class QcglueError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(QcglueError):
    """Invalid construction parameters (bad exponent, empty suite list, ...)."""


class RangeError(QcglueError):
    """Evaluation outside the range supported by a truncated schedule or map."""


class DomainError(QcglueError):
    """Argument outside the mathematical domain of an operation."""


class SeamError(DomainError):
    """Evaluation too close to a piecewise seam for the requested operation."""


class ConvergenceError(QcglueError):
    """An iterative solver failed to reach its target residual."""
