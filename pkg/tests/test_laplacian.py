import math

import mpmath
import numpy as np
import pytest
from scipy.linalg import expm

from fracteuler.errors import LaplacianError, PoleError, SpectrumError
from fracteuler.laplacian import (
    backward_euler_matrix,
    eigendecompose,
    frac_power,
    mlf_matrix_eig,
    mlf_matrix_mixture,
    post_widder_coeffs,
    post_widder_mlf,
    random_laplacian,
    read_matrix_csv,
    resolvent,
    stochastic_check,
    two_state_laplacian,
    validate_laplacian,
    write_matrix_csv,
)
from fracteuler.special import mittag_leffler, mlf_series


class TestValidation:
    def test_accepts(self):
        validate_laplacian([[-1, 1], [1, -1]])
        validate_laplacian([[-1, 2], [1, -2]])

    def test_negative_off_diagonal(self):
        with pytest.raises(LaplacianError) as exc:
            validate_laplacian([[-1, -1], [1, 1]])
        assert exc.value.kind == "off-diagonal-negative" and exc.value.index == (0, 1)

    def test_column_sum(self):
        with pytest.raises(LaplacianError) as exc:
            validate_laplacian([[-1, 1], [1.5, -1]])
        assert exc.value.kind == "column-sum-nonzero" and exc.value.index == 0

    def test_not_square(self):
        with pytest.raises(LaplacianError) as exc:
            validate_laplacian(np.zeros((2, 3)))
        assert exc.value.kind == "not-square"

    def test_random_generators_are_laplacians(self, rng):
        for d in range(2, 9):
            L = random_laplacian(d, rng)
            assert np.allclose(L.entries.sum(axis=0), 0, atol=1e-14)

    def test_jump_probabilities_sum_to_one(self, rng):
        L = random_laplacian(5, rng)
        for j in range(5):
            p = L.jump_probabilities(j)
            assert p[j] == 0.0 and p.sum() == pytest.approx(1.0, abs=1e-15)


class TestSpectrum:
    def test_complex_spectrum_rejected(self):
        # a directed 3-cycle has eigenvalues -1.5 +- i sqrt(3)/2
        A = np.array([[-1.0, 0, 1], [1, -1, 0], [0, 1, -1]])
        with pytest.raises(SpectrumError):
            eigendecompose(A)

    def test_defective_rejected(self):
        # a chain with a double eigenvalue and one eigenvector
        A = np.array([[-1.0, 0, 0], [1, -1, 0], [0, 1, 0]])
        with pytest.raises(SpectrumError):
            eigendecompose(A)

    def test_zero_mode(self, rng):
        eig = eigendecompose(random_laplacian(6, rng))
        assert np.sum(eig.values == 0.0) == 1
        assert np.all(eig.values <= 0)


class TestFracPower:
    def test_two_by_two_identity(self):
        assert np.allclose(frac_power(two_state_laplacian(1, 1), 0.5), [[2, -2], [-2, 2]], atol=1e-14)

    @pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
    @pytest.mark.parametrize("b", [0.5, 1.7])
    @pytest.mark.parametrize("alpha", [0.4, 0.8])
    def test_two_by_two_is_laplacian(self, a, b, alpha):
        L = two_state_laplacian(a, b)
        P = frac_power(L, alpha)
        assert np.allclose(P, -L.entries * (a + b) ** (1 / alpha - 1), rtol=1e-12)
        validate_laplacian(-P, tol=1e-10)

    def test_alpha_one(self, rng):
        L = random_laplacian(4, rng)
        assert np.array_equal(frac_power(L, 1.0), -L.entries)

    def test_power_composition(self, rng):
        for _ in range(5):
            L = random_laplacian(5, rng)
            P = frac_power(L, 0.6)
            lam, V = np.linalg.eig(P)
            back = (V * np.abs(lam.real) ** 0.6) @ np.linalg.inv(V)
            assert np.allclose(back.real, -L.entries, atol=1e-8)


class TestMatrixMlf:
    def test_identity_at_zero(self, rng):
        L = random_laplacian(3, rng)
        assert np.array_equal(mlf_matrix_eig(L, 0.7, 0.0), np.eye(3))
        assert np.allclose(mlf_matrix_mixture(L, 0.7, 0.0), np.eye(3), atol=1e-9)

    def test_alpha_one_is_expm(self, rng):
        for _ in range(5):
            L = random_laplacian(4, rng)
            assert np.allclose(mlf_matrix_eig(L, 1.0, 0.8), expm(0.8 * L.entries), atol=1e-10, rtol=0)

    def test_stochastic(self, rng):
        for _ in range(5):
            L = random_laplacian(6, rng)
            for t in (0.1, 1.0, 10.0):
                assert stochastic_check(mlf_matrix_eig(L, 0.7, t), 1e-10).passed

    def test_row_of_ones(self, rng):
        L = random_laplacian(5, rng)
        assert np.allclose(np.ones(5) @ mlf_matrix_eig(L, 0.6, 2.0), np.ones(5), atol=1e-12)

    def test_two_state_scalar_formula(self):
        L = two_state_laplacian(1, 1)
        for alpha in (0.5, 0.7):
            M = mlf_matrix_mixture(L, alpha, 1.3)
            assert M[0, 0] == pytest.approx(0.5 * (1 + mittag_leffler(alpha, -2 * 1.3**alpha)), abs=1e-9)

    def test_routes_agree(self, rng):
        L = random_laplacian(4, rng)
        assert np.allclose(mlf_matrix_mixture(L, 0.7, 1.0), mlf_matrix_eig(L, 0.7, 1.0), atol=1e-6, rtol=0)


class TestResolvent:
    def test_nonnegative(self, rng):
        L = random_laplacian(5, rng)
        for s in (0.01, 1.0, 50.0):
            assert resolvent(L, s).min() >= -1e-14

    def test_pole(self):
        with pytest.raises(PoleError):
            resolvent(two_state_laplacian(1, 1), 0.0)

    def test_sign_pattern(self, rng):
        L = random_laplacian(4, rng)
        M = np.eye(4) - 0.3 * L.entries
        off = M - np.diag(np.diag(M))
        assert np.all(np.diag(M) > 0) and np.all(off <= 0)
        assert np.linalg.inv(M).min() >= 0

    def test_backward_euler_limit(self, rng):
        L = random_laplacian(3, rng)
        assert np.abs(backward_euler_matrix(L, 1.0, 2**16) - expm(L.entries)).max() < 1e-3


def scalar_transform_derivative(alpha, lam, s, n):
    f = lambda x: x ** (alpha - 1) / (x**alpha - lam)
    with mpmath.workdps(50):
        return mpmath.diff(f, mpmath.mpf(s), n)


class TestPostWidder:
    @pytest.mark.parametrize("alpha", [0.5, 0.8, 1.0])
    @pytest.mark.parametrize("n", [1, 2, 3, 6])
    def test_coefficients_against_derivatives(self, alpha, n):
        # F^(n)(s) = (-1)^n n! s^(-n-1) sum_k c_k R^k with R = s^a / (s^a - lam)
        lam, s = -1.3, 2.0
        c = post_widder_coeffs(alpha, n)
        R = s**alpha / (s**alpha - lam)
        rhs = (-1) ** n * math.factorial(n) * s ** (-n - 1) * sum(c[k] * R**k for k in range(1, n + 2))
        assert float(scalar_transform_derivative(alpha, lam, s, n)) == pytest.approx(rhs, rel=1e-10)

    def test_coefficients_positive_and_normalised(self):
        for n in (1, 16, 200):
            c = post_widder_coeffs(0.7, n)
            assert np.all(c[1:] >= 0) and c.sum() == pytest.approx(1.0, abs=1e-12)

    def test_alpha_one_converges_to_expm(self):
        L = two_state_laplacian(1, 2)
        assert np.abs(post_widder_mlf(L, 1.0, 1.0, 12) - expm(L.entries)).max() < 0.05

    def test_nonnegative(self, rng):
        for _ in range(5):
            L = random_laplacian(4, rng)
            for n in (2, 4, 8):
                assert post_widder_mlf(L, 0.7, 1.0, n).min() >= 0

    def test_scalar(self):
        v = post_widder_mlf(np.array([[-1.0]]), 0.5, 1.0, 16)[0, 0]
        assert v == pytest.approx(mlf_series(0.5, -1.0), abs=0.05)

    def test_close_to_eig_route(self):
        L = two_state_laplacian(0.7, 1.9)
        assert np.abs(post_widder_mlf(L, 0.6, 1.0, 16) - mlf_matrix_eig(L, 0.6, 1.0)).max() < 0.05


class TestStochasticCheck:
    def test_examples(self):
        assert stochastic_check(np.eye(3)).passed
        assert stochastic_check([[0.5, 0.5], [0.5, 0.5]]).passed
        r = stochastic_check([[1.1, 0], [-0.1, 1]])
        assert not r.passed and r.min_entry == pytest.approx(-0.1)


def test_csv_roundtrip(tmp_path, rng):
    L = random_laplacian(4, rng)
    path = tmp_path / "A.csv"
    write_matrix_csv(path, L.entries, comment="test matrix")
    assert np.array_equal(read_matrix_csv(path), L.entries)
    path.write_text("dim,3\n1,2\n")
    with pytest.raises(ValueError):
        read_matrix_csv(path)
