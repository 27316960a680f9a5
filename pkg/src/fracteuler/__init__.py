"""Fractional Euler limits, Mittag-Leffler functions and fractional random walks."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AbsorbingStateError,
    ConvergenceError,
    EventCapError,
    FractEulerError,
    GridWarning,
    LaplacianError,
    MlfOverflowError,
    PoleError,
    SpectrumError,
)
from .special import MlfParams, QuadratureGrid, gamma_fn, mittag_leffler, mlf, mlf_series, mlf_two_param  # noqa: E402

__all__ = [
    "__version__",
    "AbsorbingStateError",
    "ConvergenceError",
    "EventCapError",
    "FractEulerError",
    "GridWarning",
    "LaplacianError",
    "MlfOverflowError",
    "PoleError",
    "SpectrumError",
    "MlfParams",
    "QuadratureGrid",
    "gamma_fn",
    "mittag_leffler",
    "mlf",
    "mlf_series",
    "mlf_two_param",
]
