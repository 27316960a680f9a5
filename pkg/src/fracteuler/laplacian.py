"""Graph Laplacians and their Mittag-Leffler matrix functions.

A graph Laplacian here is a generator: nonnegative off-diagonal entries and
columns summing to zero.  ``E_alpha(A t^alpha)`` is then a stochastic matrix
for every ``t >= 0``, which the three evaluation routes below can be checked
against:

* eigendecomposition with the scalar function applied to the spectrum,
* the exponential mixture over ``w_minus`` with the fractional power
  ``(-A)^(1/alpha)`` in the exponent,
* the Post-Widder limit, a positive combination of resolvent powers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LaplacianError, PoleError, SpectrumError
from .special import QuadratureGrid, _check_grid, _laplace_mix, _w_minus_unit, default_grid, mittag_leffler

__all__ = [
    "GraphLaplacian",
    "Eigendecomposition",
    "StochasticReport",
    "validate_laplacian",
    "eigendecompose",
    "random_laplacian",
    "two_state_laplacian",
    "frac_power",
    "mlf_matrix_eig",
    "mlf_matrix_mixture",
    "resolvent",
    "backward_euler_matrix",
    "post_widder_coeffs",
    "post_widder_mlf",
    "stochastic_check",
    "read_matrix_csv",
    "write_matrix_csv",
]

log = logging.getLogger(__name__)

COND_LIMIT = 1e8
STOCHASTIC_TOL = 1e-12


@dataclass(frozen=True)
class GraphLaplacian:
    """A validated generator matrix; build it with :func:`validate_laplacian`."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def exit_rates(self) -> np.ndarray:
        """``|a_jj|``, the total rate of leaving each state."""
        return -np.diag(self.entries).copy()

    def jump_probabilities(self, j: int) -> np.ndarray:
        """Column ``j`` of the embedded jump chain, ``a_ij / |a_jj|`` off the diagonal."""
        rate = -self.entries[j, j]
        if rate <= 0:
            raise ValueError(f"state {j} is absorbing")
        col = self.entries[:, j] / rate
        col[j] = 0.0
        return col


def validate_laplacian(A, tol: float = 1e-12) -> GraphLaplacian:
    """Check the sign pattern and zero column sums of ``A``.

    The column-sum threshold is ``tol * ||A||_inf``.  Violations raise
    :class:`LaplacianError` carrying the offending index.
    """
    if isinstance(A, GraphLaplacian):
        return A
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise LaplacianError("not-square", None, A.shape)
    off = A - np.diag(np.diag(A))
    if np.any(off < 0):
        i, j = np.unravel_index(int(np.argmin(off)), A.shape)
        raise LaplacianError("off-diagonal-negative", (int(i), int(j)), float(A[i, j]))
    scale = max(np.linalg.norm(A, np.inf), np.finfo(float).tiny)
    sums = A.sum(axis=0)
    bad = np.abs(sums) > tol * scale
    if bad.any():
        j = int(np.argmax(np.abs(sums)))
        raise LaplacianError("column-sum-nonzero", j, float(sums[j]))
    A.setflags(write=False)
    return GraphLaplacian(A)


def _as_laplacian(A) -> GraphLaplacian:
    return A if isinstance(A, GraphLaplacian) else validate_laplacian(A)


def random_laplacian(dim: int, rng=None, *, scale: float = 1.0, reversible: bool = True) -> GraphLaplacian:
    """Dense random generator.

    With ``reversible`` (the default) the rates are ``a_ij = s_ij pi_i`` for a
    symmetric ``s`` and a positive vector ``pi``, so ``A`` is similar to a
    symmetric matrix and has a real spectrum.  Otherwise the off-diagonal
    rates are independent uniforms on ``(0, scale)`` and the spectrum may be
    complex.
    """
    rng = np.random.default_rng(rng)
    if reversible:
        sym = rng.uniform(0.0, scale, size=(dim, dim))
        sym = 0.5 * (sym + sym.T)
        pi = rng.uniform(0.2, 1.0, size=dim)
        off = sym * pi[:, None]
    else:
        off = rng.uniform(0.0, scale, size=(dim, dim))
    np.fill_diagonal(off, 0.0)
    A = off - np.diag(off.sum(axis=0))
    return validate_laplacian(A)


def two_state_laplacian(a: float, b: float) -> GraphLaplacian:
    """``[[-a, b], [a, -b]]``: rate ``a`` from state 0 to 1 and ``b`` back."""
    return validate_laplacian([[-a, b], [a, -b]])


# ---------------------------------------------------------------------------
# Spectral machinery


@dataclass(frozen=True)
class Eigendecomposition:
    """``A = V diag(values) V^-1`` with the zero mode set exactly to zero."""

    values: np.ndarray
    vectors: np.ndarray
    inverse: np.ndarray
    condition: float

    def apply(self, f_values) -> np.ndarray:
        """``V diag(f_values) V^-1``."""
        return (self.vectors * np.asarray(f_values, dtype=float)) @ self.inverse


def eigendecompose(A) -> Eigendecomposition:
    """Diagonalise a graph Laplacian, rejecting complex or ill-conditioned spectra."""
    L = _as_laplacian(A)
    M = L.entries
    n = L.dim
    norm = np.linalg.norm(M, np.inf)
    if norm == 0.0:
        eye = np.eye(n)
        return Eigendecomposition(np.zeros(n), eye, eye, 1.0)
    lam, V = np.linalg.eig(M)
    if np.any(np.abs(lam.imag) > 1e-10 * norm):
        raise SpectrumError("complex eigenvalues; the spectrum must be real")
    lam = lam.real
    V = V.real
    cond = float(np.linalg.cond(V))
    if not cond <= COND_LIMIT:
        raise SpectrumError(f"eigenvector condition number {cond:.3g} exceeds {COND_LIMIT:g}")
    Vinv = np.linalg.inv(V)
    # Eigenvalue errors scale with the eigenvector condition number.
    zero_tol = n * np.finfo(float).eps * norm * max(cond, 1.0)
    zero = np.abs(lam) <= zero_tol
    if zero.sum() != 1:
        raise SpectrumError(f"expected exactly one zero eigenvalue, found {int(zero.sum())}")
    if np.any(lam[~zero] > 0):
        raise SpectrumError("positive eigenvalue in a generator matrix")
    lam = np.where(zero, 0.0, lam)
    residual = np.linalg.norm((V * lam) @ Vinv - M, np.inf)
    if residual > 1e-10 * norm:
        raise SpectrumError(f"reconstruction residual {residual:.3g} too large")
    return Eigendecomposition(lam, V, Vinv, cond)


def _check_alpha(alpha):
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")


def frac_power(A, alpha: float) -> np.ndarray:
    """``(-A)^(1/alpha)`` by diagonalisation, with ``0^(1/alpha) = 0``."""
    _check_alpha(alpha)
    L = _as_laplacian(A)
    if alpha == 1.0:
        return -L.entries.copy()
    eig = eigendecompose(L)
    return eig.apply((-eig.values) ** (1.0 / alpha))


def mlf_matrix_eig(A, alpha: float, t: float) -> np.ndarray:
    """``E_alpha(A t^alpha)`` with the scalar function applied to each eigenvalue."""
    _check_alpha(alpha)
    if t < 0:
        raise ValueError("t must be nonnegative")
    L = _as_laplacian(A)
    if t == 0:
        return np.eye(L.dim)
    eig = eigendecompose(L)
    return eig.apply(mittag_leffler(alpha, eig.values * t**alpha))


def mlf_matrix_mixture(
    A, alpha: float, t: float, grid: QuadratureGrid | None = None, *, check: bool = False
) -> np.ndarray:
    """``sum_k w_minus(s_k) ds_k exp(-s_k (-A)^(1/alpha) t)`` on a log-spaced grid.

    The exponentials share the eigenvectors of the fixed power, so each grid
    node costs one scalar exponential per eigenvalue.
    """
    _check_alpha(alpha)
    if t < 0:
        raise ValueError("t must be nonnegative")
    L = _as_laplacian(A)
    eig = eigendecompose(L)
    rates = (-eig.values) ** (1.0 / alpha) * t
    if alpha == 1.0:
        return eig.apply(np.exp(-rates))
    grid = grid or default_grid(alpha)

    def compute(g):
        return _laplace_mix(_w_minus_unit, alpha, rates, g)

    f = compute(grid)
    if check:
        _check_grid(f, compute, grid, 1e-10)
    return eig.apply(f)


def resolvent(A, s: float) -> np.ndarray:
    """``(s I - A)^-1`` by a dense solve; raises :class:`PoleError` at the spectrum."""
    M = np.asarray(A.entries if isinstance(A, GraphLaplacian) else A, dtype=float)
    shifted = s * np.eye(M.shape[0]) - M
    if np.linalg.cond(shifted) > 1.0 / np.finfo(float).eps:
        raise PoleError(f"s = {s} is (numerically) an eigenvalue")
    return np.linalg.solve(shifted, np.eye(M.shape[0]))


def backward_euler_matrix(A, t: float, n: int) -> np.ndarray:
    """Backward-difference Euler limit ``(I - (t/n) A)^(-n)``."""
    M = _as_laplacian(A).entries
    step = np.linalg.solve(np.eye(M.shape[0]) - (t / n) * M, np.eye(M.shape[0]))
    return np.linalg.matrix_power(step, int(n))


def post_widder_coeffs(alpha: float, n: int) -> np.ndarray:
    """Weights ``c_1..c_{n+1}`` of the ``n``-th Post-Widder approximant.

    ``E_alpha(A t^alpha) ~ sum_k c_k (I - (t/n)^alpha A)^(-k)``.  They come
    from differentiating ``s^(alpha-1) / (s^alpha - lam)`` ``n`` times; each
    derivative step moves mass between neighbouring resolvent powers, so the
    weights stay nonnegative and sum to one for any ``n``.  Index 0 of the
    returned array is unused.
    """
    _check_alpha(alpha)
    if int(n) != n or n < 0:
        raise ValueError("n must be a nonnegative integer")
    n = int(n)
    c = np.zeros(n + 2)
    c[1] = 1.0
    k = np.arange(n + 2, dtype=float)
    for m in range(1, n + 1):
        new = np.zeros_like(c)
        new[: m + 1] += (m - k[: m + 1] * alpha) * c[: m + 1] / m
        new[1 : m + 2] += k[: m + 1] * alpha * c[: m + 1] / m
        c = new
    return c


def post_widder_mlf(A, alpha: float, t: float, n: int) -> np.ndarray:
    """``n``-th Post-Widder approximant of ``E_alpha(A t^alpha)``.

    Entrywise nonnegative for every ``n``: the resolvent of a generator is
    nonnegative and the weights are positive.
    """
    _check_alpha(alpha)
    if not t > 0:
        raise ValueError("t must be positive")
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    n = int(n)
    M = np.asarray(A.entries if isinstance(A, GraphLaplacian) else A, dtype=float)
    eye = np.eye(M.shape[0])
    R = np.linalg.solve(eye - (t / n) ** alpha * M, eye)
    c = post_widder_coeffs(alpha, n)
    P = R.copy()
    out = c[1] * P
    for k in range(2, n + 2):
        P = P @ R
        out += c[k] * P
    return out


# ---------------------------------------------------------------------------
# Verification and I/O


@dataclass(frozen=True)
class StochasticReport:
    min_entry: float
    max_column_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_entry >= -self.tol and self.max_column_deviation <= self.tol

    def __bool__(self):
        return self.passed


def stochastic_check(M, tol: float = STOCHASTIC_TOL) -> StochasticReport:
    """Report how far ``M`` is from having nonnegative entries and unit column sums."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("stochastic_check needs a square matrix")
    return StochasticReport(
        float(M.min()), float(np.max(np.abs(M.sum(axis=0) - 1.0))), float(tol)
    )


def read_matrix_csv(path) -> np.ndarray:
    """Read a ``dim,N`` header followed by ``N`` comma-separated rows; ``#`` lines are skipped."""
    lines = [
        ln.strip()
        for ln in Path(path).read_text().splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise ValueError(f"{path}: empty matrix file")
    head = [h.strip() for h in lines[0].split(",")]
    if len(head) != 2 or head[0] != "dim":
        raise ValueError(f"{path}: first line must be 'dim,N'")
    dim = int(head[1])
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    M = np.array(rows, dtype=float)
    if M.shape != (dim, dim):
        raise ValueError(f"{path}: expected a {dim}x{dim} matrix, got shape {M.shape}")
    return M


def write_matrix_csv(path, M, comment: str | None = None) -> None:
    M = np.asarray(M, dtype=float)
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(f"dim,{M.shape[0]}")
    out.extend(",".join(repr(float(v)) for v in row) for row in M)
    Path(path).write_text("\n".join(out) + "\n")
