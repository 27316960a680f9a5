"""Scalar Mittag-Leffler functions.

Two families of evaluators are provided and can be cross-checked against
each other:

* power series ``sum z**k / Gamma(alpha*k + beta)``, summed in double
  precision when safe and in extended precision (mpmath) when the terms
  cancel heavily;
* real-axis integrals, i.e. mixtures of exponentials obtained by collapsing
  the Cauchy contour onto the branch cut.  These are discretised with the
  trapezoidal rule after the substitution ``s = exp(x)``.

:func:`mlf` picks between them, :func:`mittag_leffler` is the vectorised
``E_alpha(z)`` used by the matrix code.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import gammaln

from .errors import ConvergenceError, GridWarning, MlfOverflowError, PoleError

__all__ = [
    "MlfParams",
    "QuadratureGrid",
    "default_grid",
    "gamma_fn",
    "mlf_series",
    "mlf_two_param",
    "mlf_negative_mixture",
    "mlf_positive_branchcut",
    "mlf",
    "mittag_leffler",
    "mlf_method",
    "SERIES_RADIUS",
]

#: |lambda t^alpha| at or below which the dispatcher sums the series.
SERIES_RADIUS = 5.0
#: alpha at or above which the dispatcher prefers the series (the w_minus
#: density is nearly a point mass and needs a very fine grid).
SERIES_ALPHA = 0.97
SERIES_TOL = 1e-12
MIN_TERMS = 300
MAX_TERMS = 20000
_EXP_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class MlfParams:
    """Order ``alpha`` in (0, 1] and rate ``lam`` > 0."""

    alpha: float
    lam: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not (self.lam > 0.0) or not math.isfinite(self.lam):
            raise ValueError(f"lambda must be positive and finite, got {self.lam!r}")

    @property
    def rate_scale(self) -> float:
        """``lam ** (1/alpha)``: the location of the pole / the density's scale."""
        return self.lam ** (1.0 / self.alpha)


@dataclass(frozen=True)
class QuadratureGrid:
    """Equally spaced trapezoidal grid in ``x``, with abscissae ``s = exp(x)``."""

    x_min: float
    x_max: float
    n_points: int
    rule: str = "trapezoid"

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be smaller than x_max")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError("n_points must be an integer >= 2")
        if self.rule != "trapezoid":
            raise ValueError(f"unknown quadrature rule {self.rule!r}")

    @property
    def step(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(s, weights)`` such that ``int f(s) ds ~ sum(weights * f(s))``.

        The weights already include the Jacobian ``ds = s dx``.
        """
        x = np.linspace(self.x_min, self.x_max, int(self.n_points))
        s = np.exp(x)
        w = np.full_like(x, self.step)
        w[0] *= 0.5
        w[-1] *= 0.5
        return s, w * s

    def refined(self, factor: int = 2) -> "QuadratureGrid":
        return QuadratureGrid(
            self.x_min, self.x_max, factor * (self.n_points - 1) + 1, self.rule
        )


def default_grid(alpha: float, n_points: int = 4001) -> QuadratureGrid:
    """Grid on ``x in [-40/alpha, 40/alpha]``.

    The log-substituted integrands decay like ``exp(-alpha |x|)``, so the
    bounds scale with ``1/alpha``.
    """
    return QuadratureGrid(-40.0 / alpha, 40.0 / alpha, n_points)


def _fine_grid(alpha: float) -> QuadratureGrid:
    # The w_minus integrand is analytic in a strip of half-width
    # pi*(1-alpha)/alpha; the trapezoid error is ~exp(-2*pi*width/h).
    grid = default_grid(alpha)
    width = math.pi * (1.0 - alpha) / alpha
    h = 2.0 * math.pi * width / 40.0
    n = int(math.ceil((grid.x_max - grid.x_min) / h)) + 1
    if n > grid.n_points:
        grid = QuadratureGrid(grid.x_min, grid.x_max, n)
    return grid


# ---------------------------------------------------------------------------
# Gamma and series


def gamma_fn(z: float) -> float:
    """Gamma function for real ``z``; raises :class:`PoleError` at 0, -1, -2, ..."""
    z = float(z)
    if z <= 0 and z == math.floor(z):
        raise PoleError(f"Gamma has a pole at z={z}")
    return math.gamma(z)


def _series_plan(alpha: float, beta: float, z: float, tol: float):
    """Estimate term count and peak term size from log-magnitudes."""
    k = np.arange(MAX_TERMS + 1, dtype=float)
    logt = k * math.log(abs(z)) - gammaln(alpha * k + beta)
    peak = int(np.argmax(logt))
    small = np.nonzero(logt[peak:] < math.log(tol) - 2.0)[0]
    if small.size == 0:
        raise ConvergenceError(
            f"series for E_({alpha},{beta})({z}) needs more than {MAX_TERMS} terms"
        )
    n_needed = peak + int(small[0]) + 1
    return max(MIN_TERMS, n_needed + 10), float(logt[peak])


def _series(alpha: float, beta: float, z: float, tol: float) -> float:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    if beta <= 0:
        raise ValueError("beta must be positive")
    if z == 0.0:
        return 1.0 / math.gamma(beta)
    cap, log_peak = _series_plan(alpha, beta, z, tol)

    # Alternating sums lose about log10(peak term) digits; switch to
    # extended precision when that loss would exceed the tolerance.
    if z < 0 and log_peak + math.log(np.finfo(float).eps) > math.log(tol) - 4.0:
        dps = int(log_peak / math.log(10.0)) + 25
        with mpmath.workdps(dps):
            a, b, zz = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
            total = mpmath.mpf(0)
            power = mpmath.mpf(1)
            tol_mp = mpmath.mpf(tol)
            for k in range(cap + 1):
                term = power * mpmath.rgamma(a * k + b)
                total += term
                if k > 0:
                    next_term = power * zz * mpmath.rgamma(a * (k + 1) + b)
                    if abs(next_term) < tol_mp * (1 + abs(total)):
                        return float(total)
                power *= zz
        raise ConvergenceError(f"series for E_({alpha},{beta})({z}) did not converge")

    total = 0.0
    comp = 0.0
    logz = math.log(abs(z))
    sign = -1.0 if z < 0 else 1.0
    for k in range(cap + 1):
        term = math.exp(k * logz - math.lgamma(alpha * k + beta))
        if sign < 0 and k % 2:
            term = -term
        # Kahan summation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if k > 0:
            nxt = math.exp((k + 1) * logz - math.lgamma(alpha * (k + 1) + beta))
            if nxt < tol * (1.0 + abs(total)):
                return total
    raise ConvergenceError(f"series for E_({alpha},{beta})({z}) did not converge")


def mlf_series(alpha: float, z: float, tol: float = SERIES_TOL) -> float:
    """One-parameter Mittag-Leffler function by its power series."""
    return _series(float(alpha), 1.0, float(z), tol)


def mlf_two_param(alpha: float, beta: float, z: float, tol: float = SERIES_TOL) -> float:
    """Two-parameter Mittag-Leffler function ``sum z^k / Gamma(alpha k + beta)``."""
    return _series(float(alpha), float(beta), float(z), tol)


# ---------------------------------------------------------------------------
# Branch-cut densities (unit rate).  The mixture-densities module exposes the
# general-lambda versions; the evaluators here integrate in the scaled
# variable so that one grid serves every lambda.


def _w_minus_unit(alpha: float, s: np.ndarray) -> np.ndarray:
    sa = s**alpha
    return (math.sin(alpha * math.pi) / math.pi) * (s ** (alpha - 1.0)) / (
        sa * sa + 2.0 * sa * math.cos(alpha * math.pi) + 1.0
    )


def _w_plus_unit(alpha: float, s: np.ndarray) -> np.ndarray:
    sa = s**alpha
    return (math.sin(alpha * math.pi) / math.pi) * (s ** (alpha - 1.0)) / (
        sa * sa - 2.0 * sa * math.cos(alpha * math.pi) + 1.0
    )


def _laplace_mix(density, alpha, rates, grid):
    """``int density(s) exp(-s * rate) ds`` for each rate, trapezoidal in log s."""
    s, w = grid.nodes()
    weights = density(alpha, s) * w
    rates = np.atleast_1d(np.asarray(rates, dtype=float))
    out = np.empty(rates.shape)
    flat = rates.ravel()
    res = out.ravel()
    chunk = max(1, 4_000_000 // s.size)
    for i in range(0, flat.size, chunk):
        r = flat[i : i + chunk]
        res[i : i + chunk] = np.exp(-np.outer(r, s)) @ weights
    return out


def _check_grid(value, recompute, grid, tol):
    fine = recompute(grid.refined())
    change = float(np.max(np.abs(np.asarray(fine) - np.asarray(value))))
    if change > 10 * tol:
        warnings.warn(
            f"quadrature changed by {change:.3e} when the grid was "
            f"refined ({grid.n_points} points)",
            GridWarning,
            stacklevel=3,
        )


def _require_fractional(params: MlfParams):
    if params.alpha >= 1.0:
        raise ValueError("the branch-cut densities need alpha < 1; use mlf() for alpha = 1")


def mlf_negative_mixture(
    params: MlfParams,
    t: float,
    grid: QuadratureGrid | None = None,
    *,
    scaled: bool = True,
    check: bool = False,
    tol: float = 1e-10,
) -> float:
    """``E_alpha(-lam t^alpha)`` as the exponential mixture ``int w_-(s) exp(-s t) ds``.

    With ``scaled=True`` the unit-rate density is used with time
    ``lam**(1/alpha) * t``; ``scaled=False`` integrates the rate-``lam``
    density directly.  Both are the same integral after ``s -> lam^(1/alpha) s``.
    """
    _require_fractional(params)
    if t < 0:
        raise ValueError("t must be nonnegative")
    grid = grid or default_grid(params.alpha)

    def compute(g):
        if scaled:
            return float(_laplace_mix(_w_minus_unit, params.alpha, params.rate_scale * t, g)[0])
        s, w = g.nodes()
        from .densities import w_minus

        return float(np.sum(w_minus(s, params.alpha, params.lam) * np.exp(-s * t) * w))

    value = compute(grid)
    if check:
        _check_grid(value, compute, grid, tol)
    return value


def mlf_positive_branchcut(
    params: MlfParams,
    t: float,
    grid: QuadratureGrid | None = None,
    *,
    check: bool = False,
    tol: float = 1e-10,
) -> float:
    """``E_alpha(+lam t^alpha) = exp(t lam^(1/alpha))/alpha - int w_+(s) exp(-s t) ds``."""
    _require_fractional(params)
    if t < 0:
        raise ValueError("t must be nonnegative")
    arg = t * params.rate_scale
    if arg > _EXP_MAX:
        raise MlfOverflowError(f"exp({arg:.6g}) overflows double precision")
    grid = grid or default_grid(params.alpha)

    def compute(g):
        cut = _laplace_mix(_w_plus_unit, params.alpha, arg, g)[0]
        return math.exp(arg) / params.alpha - float(cut)

    value = compute(grid)
    if check:
        _check_grid(value, compute, grid, tol)
    return value


def mlf(params: MlfParams, sign: str | int, t: float) -> float:
    """``E_alpha(sign * lam * t^alpha)`` choosing series or integral representation."""
    sgn = _parse_sign(sign)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return 1.0
    if params.alpha == 1.0:
        return math.exp(sgn * params.lam * t)
    z = sgn * params.lam * t**params.alpha
    return float(mittag_leffler(params.alpha, z))


def _parse_sign(sign) -> int:
    if sign in ("+", 1, "plus", "pos"):
        return 1
    if sign in ("-", -1, "minus", "neg"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def mlf_method(alpha: float, z: float) -> str:
    """Name of the representation :func:`mittag_leffler` uses for ``E_alpha(z)``.

    ``"exp"`` at ``alpha = 1``, ``"series"`` near the origin, otherwise
    ``"mixture"`` for ``z < 0`` and ``"branchcut"`` for ``z > 0``.
    """
    if alpha == 1.0:
        return "exp"
    radius = 50.0 if alpha >= SERIES_ALPHA else SERIES_RADIUS
    if abs(z) <= radius:
        return "series"
    return "mixture" if z < 0 else "branchcut"


def mittag_leffler(alpha: float, z):
    """Vectorised ``E_alpha(z)`` for real ``z`` and ``0 < alpha <= 1``."""
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    z = np.asarray(z, dtype=float)
    if alpha == 1.0:
        return np.exp(z)
    out = np.empty(z.shape)
    flat_z = z.ravel()
    flat = out.ravel()
    use_series = np.abs(flat_z) <= SERIES_RADIUS
    if alpha >= SERIES_ALPHA:
        use_series |= np.abs(flat_z) <= 50.0
    for i in np.nonzero(use_series)[0]:
        flat[i] = _series(alpha, 1.0, float(flat_z[i]), SERIES_TOL)
    neg = ~use_series & (flat_z < 0)
    if neg.any():
        rates = (-flat_z[neg]) ** (1.0 / alpha)
        flat[neg] = _laplace_mix(_w_minus_unit, alpha, rates, _fine_grid(alpha))
    pos = ~use_series & (flat_z > 0)
    if pos.any():
        args = flat_z[pos] ** (1.0 / alpha)
        if np.any(args > _EXP_MAX):
            raise MlfOverflowError("exp(z^(1/alpha)) overflows double precision")
        cut = _laplace_mix(_w_plus_unit, alpha, args, default_grid(alpha))
        flat[pos] = np.exp(args) / alpha - cut
    return out if out.ndim else float(out)
