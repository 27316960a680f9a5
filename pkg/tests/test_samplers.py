import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import kstest

from fracteuler.densities import DensitySpec, survival_phi_Wplus, w_minus
from fracteuler.samplers import (
    RngStream,
    as_generator,
    mlf_mixing_rate,
    open_uniform,
    sample_exponential,
    sample_mlf_waiting,
    sample_wplus_waiting,
)
from fracteuler.special import MlfParams, mittag_leffler


def ml_cdf(alpha, lam):
    """1 - E_alpha(-lam t^alpha), tabulated on a dense log grid and interpolated."""
    x = np.linspace(-40.0, 40.0, 8001)
    F = 1.0 - mittag_leffler(alpha, -lam * np.exp(alpha * x))
    return lambda t: np.interp(np.log(np.maximum(t, 1e-300)), x, F)


class TestStreams:
    def test_reproducible(self):
        a = RngStream(7, 3).generator().random(5)
        b = RngStream(7, 3).generator().random(5)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RngStream(7, 3).generator().random(5)
        b = RngStream(7, 4).generator().random(5)
        c = RngStream(8, 3).generator().random(5)
        assert not np.array_equal(a, b) and not np.array_equal(a, c)

    def test_validation(self):
        with pytest.raises(ValueError):
            RngStream(-1)
        with pytest.raises(ValueError):
            RngStream(1, -2)
        with pytest.raises(TypeError):
            as_generator("seed")

    def test_open_uniform(self):
        u = open_uniform(RngStream(1).generator(), 10000)
        assert np.all((u > 0) & (u < 1))
        assert 0 < open_uniform(RngStream(1).generator()) < 1


def test_exponential_mean():
    x = sample_exponential(2.0, RngStream(11), 200000)
    assert x.mean() == pytest.approx(0.5, rel=0.01)
    with pytest.raises(ValueError):
        sample_exponential(0.0, RngStream(1))


@pytest.mark.parametrize("alpha", [0.3, 0.6, 0.9])
def test_mixing_rate_is_inverse_cdf_of_w_minus(alpha):
    for u in (0.1, 0.5, 0.93):
        X = float(mlf_mixing_rate(alpha, u))
        mass, _ = quad(lambda x: w_minus(math.exp(x), alpha) * math.exp(x), -700, math.log(X), limit=300)
        assert mass == pytest.approx(u, abs=1e-8)


def test_alpha_one_is_exactly_exponential():
    a = sample_mlf_waiting(MlfParams(1.0, 2.5), RngStream(5), 1000)
    b = sample_exponential(2.5, RngStream(5), 1000)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("alpha, lam", [(0.5, 1.0), (0.7, 2.0), (0.9, 0.5)])
def test_ml_ks(alpha, lam):
    tau = sample_mlf_waiting(MlfParams(alpha, lam), RngStream(42), 50000)
    assert np.all(tau > 0)
    assert kstest(tau, ml_cdf(alpha, lam)).statistic < 0.01


def test_scalar_draws():
    assert isinstance(sample_mlf_waiting(MlfParams(0.6), RngStream(1)), float)
    assert isinstance(sample_wplus_waiting(MlfParams(0.6), RngStream(1)), float)


def test_wplus_needs_fractional_order():
    with pytest.raises(ValueError):
        sample_wplus_waiting(MlfParams(1.0), RngStream(1))


@pytest.mark.parametrize("alpha", [0.4, 0.8])
def test_wplus_survival(alpha):
    n = 50000
    tau = sample_wplus_waiting(MlfParams(alpha, 1.3), RngStream(9), n)
    t = np.array([0.05, 0.3, 1.0, 3.0, 10.0])
    phi = survival_phi_Wplus(DensitySpec(MlfParams(alpha, 1.3), "W_plus"), t)
    emp = (tau[:, None] > t).mean(axis=0)
    se = np.sqrt(phi * (1 - phi) / n)
    assert np.all(np.abs(emp - phi) < 3 * se + 1e-12)
