"""Discrete Euler-limit constructions and their fractional generalisations.

Every scheme starts from ``y_0 = 1`` with step ``h = t/n`` and is compared
with its continuum limit (``exp(t)`` or ``E_alpha(+-t^alpha)``).
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import GridWarning, PoleError
from .densities import normalization_C, w_minus, w_plus
from .special import MlfParams, QuadratureGrid, _parse_sign, default_grid, gamma_fn, mlf

__all__ = [
    "SchemeResult",
    "euler_classic",
    "euler_backward",
    "frac_euler",
    "gl_weights",
    "gl_scheme",
    "weighted_euler",
    "weighted_euler_nodes",
]

log = logging.getLogger(__name__)


@dataclass
class SchemeResult:
    values: np.ndarray
    h: float
    target: float
    abs_error: float = field(init=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        self.abs_error = abs(float(self.values[-1]) - self.target)

    @property
    def n(self) -> int:
        return self.values.size - 1

    @property
    def final(self) -> float:
        return float(self.values[-1])


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    return int(n)


def euler_classic(t: float, n: int) -> SchemeResult:
    """Forward Euler for ``y' = y``: ``y_j = (1 + h) y_{j-1}``."""
    n = _check_n(n)
    h = t / n
    values = (1.0 + h) ** np.arange(n + 1)
    return SchemeResult(values, h, math.exp(t))


def euler_backward(t: float, n: int) -> float:
    """Backward Euler limit ``(1 - t/n)^(-n)``."""
    n = _check_n(n)
    if t / n == 1.0:
        raise PoleError("singular step: t/n == 1")
    return (1.0 - t / n) ** (-n)


def frac_euler(alpha: float, sign, t: float, n: int, *, compensated: bool = True) -> SchemeResult:
    """Fractional compound interest by quadrature of the Caputo derivative.

    ``y_j = (1 +- h^a Gamma(1-a)) y_{j-1} + sum_{k=2}^{j} (y_{j-k} - y_{j-k+1}) / k^a``

    The memory sum is identical for growth and decay.  It converges to
    ``E_alpha(+-t^alpha)`` only like ``h^(1-alpha)``, and the ``Gamma(1-alpha)``
    factor makes it useless as ``alpha -> 1``.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if not t > 0:
        raise ValueError("t must be positive")
    n = _check_n(n)
    sgn = _parse_sign(sign)
    h = t / n
    growth = 1.0 + sgn * h**alpha * gamma_fn(1.0 - alpha)
    kernel = np.arange(2, n + 1, dtype=float) ** (-alpha)
    y = _caputo_recursion(growth, kernel, n, compensated)
    return SchemeResult(y, h, mlf(MlfParams(alpha), sgn, t))


@numba.njit(cache=True)
def _caputo_recursion(growth, kernel, n, compensated):
    y = np.empty(n + 1)
    y[0] = 1.0
    # diffs[i] = y[i] - y[i+1]; the memory sum pairs diffs[j-k] with kernel[k-2]
    diffs = np.empty(n)
    for j in range(1, n + 1):
        total = 0.0
        comp = 0.0
        for k in range(2, j + 1):
            term = diffs[j - k] * kernel[k - 2]
            if compensated:
                yk = term - comp
                tk = total + yk
                comp = (tk - total) - yk
                total = tk
            else:
                total += term
        y[j] = growth * y[j - 1] + total
        diffs[j - 1] = y[j - 1] - y[j]
    return y


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """``w_j = (-1)^j binom(-alpha, j)`` for ``j = 0..n`` via ``w_j = w_{j-1} (j-1+alpha)/j``."""
    if int(n) != n or n < 0:
        raise ValueError("n must be a nonnegative integer")
    j = np.arange(1, int(n) + 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod((j - 1.0 + alpha) / j)))


def gl_scheme(alpha: float, t: float, n: int) -> SchemeResult:
    """Implicit Grunwald-Letnikov scheme for ``y = 1 + I^alpha y``.

    ``y_m = (1 - h^a)^(-1) (y_0 + h^a sum_{j<m} w_{m-j} y_j)``
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if not t > 0:
        raise ValueError("t must be positive")
    n = _check_n(n)
    h = t / n
    ha = h**alpha
    if ha == 1.0:
        raise PoleError("h^alpha == 1 makes (1 - h^alpha) singular")
    w = gl_weights(alpha, n)
    y = np.empty(n + 1)
    y[0] = 1.0
    for m in range(1, n + 1):
        y[m] = (1.0 + ha * float(np.dot(w[m:0:-1], y[:m]))) / (1.0 - ha)
    return SchemeResult(y, h, mlf(MlfParams(alpha), +1, t))


def weighted_euler_nodes(density, alpha, grid):
    """Nodes ``s_k`` and weights ``w(s_k) * ds_k`` renormalised to sum to one."""
    s, dw = grid.nodes()
    weights = density(s, alpha, 1.0) * dw
    return s, weights / weights.sum()


def weighted_euler(
    alpha: float,
    lam: float,
    sign,
    t: float,
    n: int,
    grid: QuadratureGrid | None = None,
) -> float:
    """Weighted sum of classical Euler limits approximating ``E_alpha(+-lam t^alpha)``.

    Decay: ``sum_k w_k (1 - s_k t/n)^n`` with ``w_k`` from ``w_minus``.
    Growth: ``(1 + t lam^(1/a)/n)^n / a - (1-a)/a * sum_k W_k (1 - s_k t/n)^n``.

    The nodes are in the unit-rate variable; the rate enters as the time
    ``lam^(1/alpha) t``.  Nodes whose Euler factor satisfies
    ``1 - s_k t/n <= -1`` are unstable and dropped (their exact contribution
    ``exp(-s_k t)`` is negligible once ``n`` is large).
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    n = _check_n(n)
    sgn = _parse_sign(sign)
    params = MlfParams(alpha, lam)
    grid = grid or default_grid(alpha)
    tau = params.rate_scale * t
    density = w_minus if sgn < 0 else w_plus
    s, weights = weighted_euler_nodes(density, alpha, grid)
    factor = 1.0 - s * tau / n
    unstable = factor <= -1.0
    if tau > 0 and unstable.any():
        dropped = weights[unstable].sum()
        msg = (
            f"dropping {int(unstable.sum())} grid nodes with 1 - s t/n <= -1 "
            f"(s >= {s[unstable].min():.4g}, weight {dropped:.3e})"
        )
        log.debug(msg)
        if dropped > 1e-6:
            warnings.warn(msg, GridWarning, stacklevel=2)
        factor = np.where(unstable, 0.0, factor)
    mix = float(np.dot(weights, factor**n))
    if sgn < 0:
        return mix
    return (1.0 + tau / n) ** n / alpha - (1.0 - alpha) / alpha * mix
