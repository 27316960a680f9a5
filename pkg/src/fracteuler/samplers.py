"""Seeded waiting-time samplers.

All samplers are products of two independent inverse-transform draws:
a mixing rate from the branch-cut density and an exponential clock.  Random
numbers come from counter-based Philox streams keyed by ``(seed, stream_id)``
so ensembles can be split across workers without shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .densities import normalization_C, q_function
from .special import MlfParams

__all__ = [
    "RngStream",
    "as_generator",
    "open_uniform",
    "sample_exponential",
    "sample_mlf_waiting",
    "sample_wplus_waiting",
    "mlf_mixing_rate",
]


@dataclass(frozen=True)
class RngStream:
    """Identifies one reproducible random stream."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must be an unsigned 64-bit integer")
        if int(self.stream_id) < 0:
            raise ValueError("stream_id must be nonnegative")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        seq = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        return np.random.Generator(np.random.Philox(seq))


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    if rng is None or isinstance(rng, (int, np.integer)):
        return RngStream(0 if rng is None else int(rng)).generator()
    raise TypeError(f"cannot build a generator from {type(rng).__name__}")


def open_uniform(rng: np.random.Generator, size=None):
    """Uniform draws on the open interval (0, 1); exact zeros are redrawn."""
    if size is None:
        u = rng.random()
        while u == 0.0:
            u = rng.random()
        return u
    u = rng.random(size)
    bad = u == 0.0
    while bad.any():
        u[bad] = rng.random(int(bad.sum()))
        bad = u == 0.0
    return u


def sample_exponential(rate: float, rng, size=None):
    """``tau = -log(u) / rate``."""
    if not rate > 0:
        raise ValueError("rate must be positive")
    rng = as_generator(rng)
    return -np.log(open_uniform(rng, size)) / rate


def mlf_mixing_rate(alpha: float, u):
    """Inverse CDF of ``w_-,1`` used as the time-scale factor of a Mittag-Leffler draw."""
    pa = math.pi * alpha
    return (np.sin(pa) / np.tan(pa * (1.0 - u)) - np.cos(pa)) ** (1.0 / alpha)


def sample_mlf_waiting(params: MlfParams, rng, size=None):
    """Mittag-Leffler waiting times, survival function ``E_alpha(-lam t^alpha)``.

    ``tau = -(1/lam)^(1/alpha) * X(u1) * log(u2)``; for ``alpha == 1`` the
    mixing factor is exactly one and the exponential sampler is used.
    """
    rng = as_generator(rng)
    a = params.alpha
    if a == 1.0:
        return sample_exponential(params.lam, rng, size)
    u1 = open_uniform(rng, size)
    u2 = open_uniform(rng, size)
    tau = -((1.0 / params.lam) ** (1.0 / a)) * mlf_mixing_rate(a, u1) * np.log(u2)
    return float(tau) if size is None else tau


def sample_wplus_waiting(params: MlfParams, rng, size=None):
    """Waiting times whose survival function is the W+ mixture ``phi_W+``."""
    rng = as_generator(rng)
    a = params.alpha
    if not a < 1.0:
        raise ValueError("the W+ mixture needs alpha < 1")
    u1 = open_uniform(rng, size)
    u2 = open_uniform(rng, size)
    v = normalization_C(a) * u1
    tau = -((1.0 / params.lam) ** (1.0 / a)) * q_function(v, a) ** (1.0 / a) * np.log(u2)
    return float(tau) if size is None else tau
