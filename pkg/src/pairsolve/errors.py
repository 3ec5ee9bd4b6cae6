"""Exception types shared across the package."""


class PairSolveError(ValueError):
    """Base class for all errors raised by pairsolve."""


class DegenerateConfigurationError(PairSolveError):
    """Coincident points, vanishing radii or other inputs with no finite k values."""


class SingularLocusError(PairSolveError):
    """Gamma evaluated on (or too close to) its singular sphere k_T |Y-T|^2 = 1."""


class CoplanarFrameError(PairSolveError):
    """The four anchors used for a Cramer solve are (numerically) coplanar."""


class EvaluationError(PairSolveError):
    """A residual term is infinite because a point coincides with an anchor."""


class ConfigParseError(PairSolveError):
    """Malformed configuration file. ``line`` is 1-based, or None if file-level."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConditionsNotMetError(PairSolveError):
    """Genericity conditions fail and the caller did not force the solve."""
