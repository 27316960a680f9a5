"""Exception and warning types shared across the package."""


class FractEulerError(Exception):
    """Base class for numerical failures raised by this package."""


class PoleError(FractEulerError, ValueError):
    """Evaluation requested at a pole or singular point."""


class ConvergenceError(FractEulerError, ArithmeticError):
    """A series or iteration did not converge within its term cap."""


class MlfOverflowError(FractEulerError, OverflowError):
    """The dominant exponential term exceeds the double-precision range."""


class LaplacianError(FractEulerError, ValueError):
    """A matrix violates the graph-Laplacian sign or column-sum structure.

    ``kind`` is ``"off-diagonal-negative"``, ``"column-sum-nonzero"`` or
    ``"not-square"``; ``index`` locates the offending entry or column.
    """

    def __init__(self, kind, index, value, message=None):
        self.kind = kind
        self.index = index
        self.value = value
        super().__init__(message or f"{kind} at {index}: {value!r}")


class SpectrumError(FractEulerError, ValueError):
    """Eigendecomposition is unusable (complex or defective spectrum)."""


class AbsorbingStateError(FractEulerError):
    """Total propensity (or exit rate) is zero; no further event can fire."""


class EventCapError(FractEulerError, RuntimeError):
    """A simulation exceeded its maximum number of events."""


class GridWarning(UserWarning):
    """Quadrature grid is too coarse or contains unstable nodes."""
