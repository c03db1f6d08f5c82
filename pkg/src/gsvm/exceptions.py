"""Exception hierarchy.

Every library error carries a short machine-readable ``code`` that the CLI
copies into its JSON report.
"""

from __future__ import annotations


class GsvmError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class DimensionError(GsvmError, ValueError):
    code = "dimension_mismatch"


class LabelError(GsvmError, ValueError):
    code = "invalid_label"


class InfeasibleError(GsvmError):
    """Training data admits no hard-margin separator.

    ``certificate`` lists dataset indices whose class hulls intersect (or a
    pair of contradictory duplicates), which is enough to show infeasibility.
    """

    code = "infeasible"

    def __init__(self, message: str, certificate: tuple[int, ...] = ()):
        super().__init__(message)
        self.certificate = tuple(int(i) for i in certificate)


class SingularityError(GsvmError, ValueError):
    code = "singular"


class InconsistentSystemError(GsvmError):
    code = "inconsistent_system"

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = float(residual)


class NotCollapsibleError(GsvmError):
    code = "not_collapsible"


class StepSizeError(GsvmError, ValueError):
    code = "step_size_outside_certified_window"

    def __init__(self, message: str, theta: float | None = None):
        super().__init__(message)
        self.theta = theta


class ConvergenceError(GsvmError):
    code = "not_converged"


class EnumerationBoundError(GsvmError, ValueError):
    code = "enumeration_bound_exceeded"


class GenerationError(GsvmError, ValueError):
    code = "generation_error"


class DatasetFormatError(GsvmError, ValueError):
    """Malformed CSV input; ``line`` is 1-based, or None for file-level errors."""

    code = "bad_dataset"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
