"""CSV data behind the five figures; no plotting is done here.

Each ``figN_*`` function returns ``(header, rows)``; :func:`write_all`
writes them with a ``#`` comment line so any plotting tool can read them.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path

import numpy as np

from .densities import DensitySpec, survival_phi_Wplus, w_minus
from .euler import euler_classic, frac_euler
from .special import MlfParams, mittag_leffler
from .ssa import WaitingTime, ensemble_histogram, schlogl_master_solution, schlogl_network

log = logging.getLogger(__name__)

__all__ = ["fig1_compound_interest", "fig2_contour", "fig3_density", "fig4_survival", "fig5_schlogl", "write_all"]


def fig1_compound_interest(alphas=(0.5, 0.7, 0.9, 1.0), t_max=4.0, n=64):
    """Continuous and discretely compounded interest, fractional and classical.

    At ``alpha = 1`` the fractional columns are the classical ones.
    """
    t = np.linspace(0.0, t_max, n + 1)
    classical = np.exp(t)
    discrete_classical = euler_classic(t_max, n).values
    rows = []
    for a in alphas:
        if a == 1.0:
            cont, disc = classical, discrete_classical
        else:
            cont = mittag_leffler(a, t**a)
            disc = frac_euler(a, "+", t_max, n).values
        for j in range(n + 1):
            rows.append((a, t[j], cont[j], disc[j], classical[j], discrete_classical[j]))
    header = ["alpha", "t", "fractional", "fractional_discrete", "classical", "classical_discrete"]
    return header, rows


def fig2_contour(alpha=0.7, lam=1.0, eps=0.25, radius=4.0, n=64):
    """Keyhole contour collapsed onto the negative real axis, with the pole.

    Segments: ``upper`` and ``lower`` rays along ``(-radius, -eps)``, the small
    circle ``inner`` and the outer arc; ``pole`` marks ``lam^(1/alpha)``.
    """
    rows = []
    r = np.linspace(radius, eps, n)
    rows += [("upper", -x, 1e-3) for x in r]
    theta = np.linspace(math.pi, -math.pi, n)
    rows += [("inner", eps * math.cos(th), eps * math.sin(th)) for th in theta]
    rows += [("lower", -x, -1e-3) for x in r[::-1]]
    rows += [("outer", radius * math.cos(th), radius * math.sin(th)) for th in theta]
    rows.append(("pole", lam ** (1.0 / alpha), 0.0))
    return ["segment", "re", "im"], rows


def fig3_density(alpha=0.9, lam=1.0, x_min=-8.0, x_max=8.0, n=401):
    """``w_minus(s)`` and ``v(exp(x)) = s w_minus(s)`` on a log grid."""
    x = np.linspace(x_min, x_max, n)
    s = np.exp(x)
    w = w_minus(s, alpha, lam)
    return ["x", "s", "w_minus", "v"], list(zip(x, s, w, s * w))


def fig4_survival(alpha=0.9, lam=1.0, t_max=10.0, n=201):
    """Survival functions: unit exponential, Mittag-Leffler and the W+ mixture."""
    t = np.linspace(0.0, t_max, n)
    ml = mittag_leffler(alpha, -lam * t**alpha)
    wp = survival_phi_Wplus(DensitySpec(MlfParams(alpha, lam), "W_plus"), t)
    return ["t", "exponential", "mittag_leffler", "w_plus_mixture"], list(zip(t, np.exp(-lam * t), ml, wp))


def fig5_schlogl(alpha=0.7, t_snapshot=50.0, n=10000, seed=0, x_max=800):
    """Master-equation distributions and SSA histograms at ``t_snapshot``."""
    p_exp = schlogl_master_solution(alpha=1.0, times=[t_snapshot], x_max=x_max)[0]
    p_ml = schlogl_master_solution(alpha=alpha, times=[t_snapshot], x_max=x_max)[0]
    net = schlogl_network()
    h_exp = ensemble_histogram(net, WaitingTime("exp"), [t_snapshot], n, seed)[0].counts
    h_ml = ensemble_histogram(net, WaitingTime("mlf", alpha), [t_snapshot], n, seed)[0].counts
    size = x_max + 1

    def pad(c):
        out = np.zeros(max(size, c.size), dtype=np.int64)
        out[: c.size] = c
        return out[:size]

    h_exp, h_ml = pad(h_exp), pad(h_ml)
    rows = [(x, p_exp[x], p_ml[x], h_exp[x], h_ml[x]) for x in range(size)]
    return ["state", "master_exp", "master_mlf", "ssa_exp_count", "ssa_mlf_count"], rows


def _fmt(v):
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def write_csv(path: Path, header, rows, comment: str) -> Path:
    lines = [f"# {comment}", ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_all(outdir, *, comment="fracteuler figures", n=10000, seed=0, t_snapshot=50.0):
    """Write one CSV per figure into ``outdir`` and return the paths."""
    outdir = Path(outdir)
    jobs = [
        ("fig1_compound_interest.csv", fig1_compound_interest, {}),
        ("fig2_contour.csv", fig2_contour, {}),
        ("fig3_w_minus.csv", fig3_density, {}),
        ("fig4_survival.csv", fig4_survival, {}),
        ("fig5_schlogl.csv", fig5_schlogl, {"n": n, "seed": seed, "t_snapshot": t_snapshot}),
    ]
    paths = []
    for name, fn, kw in jobs:
        log.info("writing %s", name)
        header, rows = fn(**kw)
        paths.append(write_csv(outdir / name, header, rows, comment))
    return paths
