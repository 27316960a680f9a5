"""Branch-cut densities of the Mittag-Leffler function and the W+ mixture.

``w_minus`` weights the exponential mixture for ``E_alpha(-lam t^alpha)``;
``w_plus`` is the (unnormalised) weight left over from the branch cut for a
positive argument, and ``W_plus = w_plus / C`` with ``C = 1/alpha - 1`` is
its normalised version.  The CDF of ``W_plus`` and its inverse have closed
forms, which the W+ sampler relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .special import (
    MlfParams,
    QuadratureGrid,
    _check_grid,
    _laplace_mix,
    _w_plus_unit,
    default_grid,
)

__all__ = [
    "DensitySpec",
    "KINDS",
    "w_minus",
    "w_plus",
    "density_eval",
    "normalization_C",
    "normalization_C_numeric",
    "g_tilde",
    "antiderivative_g",
    "cdf_G",
    "inv_cdf_G",
    "q_function",
    "survival_phi_Wplus",
    "laplace_phi_Wplus",
]

KINDS = ("w_minus", "w_plus", "W_plus", "w_minus_unit")


@dataclass(frozen=True)
class DensitySpec:
    params: MlfParams
    kind: str = "W_plus"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.params.alpha < 1.0:
            raise ValueError("branch-cut densities are defined for 0 < alpha < 1 only")
        if self.kind == "w_minus_unit" and self.params.lam != 1.0:
            object.__setattr__(self, "params", MlfParams(self.params.alpha, 1.0))

    @property
    def alpha(self) -> float:
        return self.params.alpha

    @property
    def lam(self) -> float:
        return self.params.lam


def w_minus(s, alpha, lam=1.0):
    """``lam sin(a pi)/pi * s^(a-1) / (s^2a + 2 lam s^a cos(a pi) + lam^2)``."""
    # sa * sa overflows to inf for huge s, where the density is 0 anyway
    with np.errstate(over="ignore"):
        sa = np.asarray(s, dtype=float) ** alpha
        return (
            lam
            * math.sin(alpha * math.pi)
            / math.pi
            * np.asarray(s, dtype=float) ** (alpha - 1.0)
            / (sa * sa + 2.0 * lam * sa * math.cos(alpha * math.pi) + lam * lam)
        )


def w_plus(s, alpha, lam=1.0):
    """Branch-cut weight for a positive argument; total mass ``1/alpha - 1``."""
    # sa * sa overflows to inf for huge s, where the density is 0 anyway
    with np.errstate(over="ignore"):
        # w_minus with lam -> -lam and one extra overall sign change
        sa = np.asarray(s, dtype=float) ** alpha
        return (
            lam
            * math.sin(alpha * math.pi)
            / math.pi
            * np.asarray(s, dtype=float) ** (alpha - 1.0)
            / (sa * sa - 2.0 * lam * sa * math.cos(alpha * math.pi) + lam * lam)
        )


def _positive(s, name="s"):
    arr = np.asarray(s, dtype=float)
    if np.any(~(arr > 0)):
        raise ValueError(f"{name} must be positive")
    return arr


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def density_eval(spec: DensitySpec, s):
    """Evaluate the density selected by ``spec.kind`` at ``s > 0``."""
    s = _positive(s)
    a, lam = spec.alpha, spec.lam
    if spec.kind in ("w_minus", "w_minus_unit"):
        out = w_minus(s, a, lam)
    elif spec.kind == "w_plus":
        out = w_plus(s, a, lam)
    else:
        out = w_plus(s, a, lam) / normalization_C(a)
    return _scalar_or_array(out)


def normalization_C(alpha: float) -> float:
    """Total mass of ``w_plus``: ``1/alpha - 1``."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    return 1.0 / alpha - 1.0


def normalization_C_numeric(
    alpha: float, lam: float = 1.0, grid: QuadratureGrid | None = None, *, check=False
) -> float:
    """Trapezoidal value of ``int_R v(exp(x)) dx`` with ``w_plus(s) = v(s)/s``."""
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    grid = grid or default_grid(alpha)

    def compute(g):
        # Centre the grid on the density's scale lam^(1/alpha).
        shift = math.log(lam) / alpha
        s, w = QuadratureGrid(g.x_min + shift, g.x_max + shift, g.n_points).nodes()
        return float(np.sum(w_plus(s, alpha, lam) * w))

    value = compute(grid)
    if check:
        _check_grid(value, compute, grid, 1e-10)
    return value


# ---------------------------------------------------------------------------
# Antiderivative, CDF and inverse CDF of w_plus / W_plus


def _singular_points(alpha, lam):
    s2 = lam ** (1.0 / alpha)
    s1 = None
    if alpha < 1.0 / 3.0:
        s1 = (2.0 * lam * math.cos(alpha * math.pi) - lam) ** (1.0 / alpha)
    return s1, s2


def g_tilde(s, alpha, lam=1.0):
    """Raw arctan antiderivative of ``w_plus`` (before the case corrections).

    At the singular points ``s1``/``s2`` the arctan arguments are taken as
    ``+inf`` (the one-sided limit from above).
    """
    sa = np.asarray(s, dtype=float) ** alpha
    c = math.cos(alpha * math.pi)
    tn = math.tan(alpha * math.pi / 2.0)
    d1 = lam + sa - 2.0 * lam * c
    d2 = sa - lam
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(d1 == 0.0, -np.inf, (-lam + sa - 2.0 * lam * c) / d1)
        r2 = np.where(d2 == 0.0, np.inf, (lam + sa) / d2)
    return (np.arctan(r1 * tn) - np.arctan(r2 * tn)) / (2.0 * alpha * math.pi)


def antiderivative_g(spec: DensitySpec, s):
    """Continuous antiderivative ``g`` of ``w_plus`` with ``g(inf) = 0``.

    ``g(0+) = -C``.  Which correction applies is decided from the sign of the
    same denominators that enter the arctans, so rounding near ``s1``/``s2``
    can never select a branch inconsistent with the arctan value.
    """
    if spec.kind != "w_plus":
        raise ValueError("antiderivative_g is defined for kind='w_plus'")
    s = _positive(s)
    a, lam = spec.alpha, spec.lam
    sa = s**a
    base = g_tilde(s, a, lam)
    below_s2 = (sa - lam) < 0.0
    if a < 1.0 / 3.0:
        below_s1 = (lam + sa - 2.0 * lam * math.cos(a * math.pi)) < 0.0
        corr = np.where(below_s1, -1.0 / a, np.where(below_s2, -0.5 / a, 0.0))
    else:
        corr = np.where(below_s2, -0.5 / a, 0.0)
    return _scalar_or_array(base + corr)


def cdf_G(spec: DensitySpec, T):
    """CDF of ``W_plus``: ``G(T) = 1 + g(T)/C``."""
    T = _positive(T, "T")
    g_spec = DensitySpec(spec.params, "w_plus")
    out = 1.0 + np.asarray(antiderivative_g(g_spec, T)) / normalization_C(spec.alpha)
    return _scalar_or_array(out)


def q_function(v, alpha, lam=1.0):
    """``Q(v) = lam (sin(a pi (1+2v)) - sin(a pi)) / sin(2 a pi (1+v))``.

    Evaluated in the equivalent form ``lam sin(a pi v) / sin(a pi (1+v))``
    (sum-to-product on the numerator cancels the common cosine factor), which
    has no removable 0/0 inside ``(0, C)``.
    """
    v = np.asarray(v, dtype=float)
    return lam * np.sin(alpha * math.pi * v) / np.sin(alpha * math.pi * (1.0 + v))


def inv_cdf_G(spec: DensitySpec, u):
    """Inverse of :func:`cdf_G`: ``T = Q(C u)^(1/alpha)`` for ``u`` in (0, 1)."""
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0) & (u < 1))):
        raise ValueError("u must lie in the open interval (0, 1)")
    a = spec.alpha
    out = q_function(normalization_C(a) * u, a, spec.lam) ** (1.0 / a)
    return _scalar_or_array(out)


# ---------------------------------------------------------------------------
# W+ survival function and its Laplace transform


def survival_phi_Wplus(spec: DensitySpec, t, grid: QuadratureGrid | None = None):
    """``phi(t) = int W_plus(s) exp(-s t) ds`` (a completely monotone survival function)."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be nonnegative")
    a = spec.alpha
    grid = grid or default_grid(a)
    out = _laplace_mix(_w_plus_unit, a, spec.params.rate_scale * t_arr, grid)
    out = out.reshape(t_arr.shape) / normalization_C(a)
    return _scalar_or_array(out)


def laplace_phi_Wplus(spec: DensitySpec, s):
    """Closed-form Laplace transform of :func:`survival_phi_Wplus`, for ``s > lam^(1/alpha)``."""
    s = np.asarray(s, dtype=float)
    a, lam = spec.alpha, spec.lam
    pole = spec.params.rate_scale
    if np.any(s == pole):
        raise PoleError(f"pole at s = lam^(1/alpha) = {pole}")
    if np.any(s < pole):
        raise ValueError(f"s must exceed lam^(1/alpha) = {pole}")
    out = a / (1.0 - a) * (1.0 / (a * (s - pole)) - s ** (a - 1.0) / (s**a - lam))
    return _scalar_or_array(out)
