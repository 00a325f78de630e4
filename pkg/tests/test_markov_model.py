import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gaussmarkov.linalg_core import cholesky
from gaussmarkov.markov_model import (
    ChainSpec,
    GaussianModel,
    band_coefficients,
    build_model,
    markov_covariance,
    markov_logdet,
    markov_precision,
)
from oracles import adjugate_inverse, cofactor_det, product_rule_matrix, random_spec_arrays


def fuzz_specs(seed=7, count=500, nmax=12):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, nmax + 1))
        yield ChainSpec(*random_spec_arrays(rng, n))


class TestChainSpec:
    def test_rejects_bad_band(self):
        with pytest.raises(ValueError):
            ChainSpec((1.0, 1.0), (1.0,))
        with pytest.raises(ValueError):
            ChainSpec((1.0, 1.0), (-1.0 + 1e-13,))
        with pytest.raises(ValueError):
            ChainSpec((1.0, 0.0), (0.5,))
        with pytest.raises(ValueError):
            ChainSpec((1.0, 1.0, 1.0), (0.5,))
        with pytest.raises(ValueError):
            ChainSpec((), ())

    def test_coerces_to_tuples(self):
        s = ChainSpec(np.array([1, 2]), [0.5])
        assert s.sigma == (1.0, 2.0) and s.rho == (0.5,)
        assert s.n == 2
        assert ChainSpec.unit([0.1, 0.2]).sigma == (1.0, 1.0, 1.0)


def test_covariance_product_rule_example():
    C = markov_covariance(ChainSpec((1, 1, 1), (0.5, 0.5)))
    assert C[0, 1] == C[1, 2] == 0.5
    assert C[0, 2] == 0.25


def test_covariance_independent_is_identity():
    np.testing.assert_array_equal(markov_covariance(ChainSpec((1, 1, 1), (0, 0))), np.eye(3))


def test_covariance_scaled_example():
    C = markov_covariance(ChainSpec((2, 1, 3), (0.5, -0.4)))
    np.testing.assert_allclose([C[0, 1], C[1, 2], C[0, 2]], [1.0, -1.2, -1.2], rtol=1e-15)
    np.testing.assert_allclose(np.diag(C), [4, 1, 9])


def test_covariance_matches_loop_oracle(rng):
    for _ in range(50):
        n = int(rng.integers(1, 10))
        sigma, rho = random_spec_arrays(rng, n)
        C = markov_covariance(ChainSpec(sigma, rho))
        np.testing.assert_allclose(C, product_rule_matrix(rho) * np.outer(sigma, sigma), rtol=1e-13)


def test_precision_example_n3():
    A = markov_precision(ChainSpec((1, 1, 1), (0.5, 0.5)))
    np.testing.assert_allclose(np.diag(A), [4 / 3, 5 / 3, 4 / 3], rtol=1e-15)
    np.testing.assert_allclose(np.diag(A, 1), [-2 / 3, -2 / 3], rtol=1e-15)
    assert A[0, 2] == 0.0 and A[2, 0] == 0.0


def test_precision_example_n2():
    r = 0.3
    A = markov_precision(ChainSpec((1, 1), (r,)))
    np.testing.assert_allclose(A, [[1 / (1 - r * r), -r / (1 - r * r)], [-r / (1 - r * r), 1 / (1 - r * r)]])


@pytest.mark.parametrize("n", [1, 2, 5])
def test_precision_independent_is_identity(n):
    np.testing.assert_array_equal(markov_precision(ChainSpec((1,) * n, (0,) * (n - 1))), np.eye(n))


def test_precision_matches_adjugate_oracle(rng):
    for _ in range(20):
        n = int(rng.integers(2, 7))
        spec = ChainSpec(*random_spec_arrays(rng, n))
        np.testing.assert_allclose(
            markov_precision(spec), adjugate_inverse(markov_covariance(spec)), rtol=1e-8, atol=1e-10
        )


def test_band_coefficients_ends():
    alpha, beta = band_coefficients([0.5])
    np.testing.assert_allclose(alpha, [4 / 3, 4 / 3])
    np.testing.assert_allclose(beta, [-2 / 3])
    alpha, beta = band_coefficients([])
    np.testing.assert_array_equal(alpha, [1.0])
    assert beta.size == 0


def test_logdet_examples():
    assert markov_logdet(ChainSpec((1, 1, 1), (0.5, 0.5))) == pytest.approx(np.log(0.5625), rel=1e-14)
    assert np.log(cofactor_det(markov_covariance(ChainSpec((1, 1, 1), (0.5, 0.5))))) == pytest.approx(
        -0.5753641449035618, rel=1e-14
    )
    assert markov_logdet(ChainSpec((2, 3, 0.5), (0, 0))) == pytest.approx(2 * np.log(3.0), rel=1e-14)
    assert markov_logdet(ChainSpec((1, 1), (0.8,))) == pytest.approx(np.log(0.36), rel=1e-14)


def test_build_model_n1():
    m = build_model(ChainSpec((2.0,)))
    np.testing.assert_array_equal(m.covariance, [[4.0]])
    np.testing.assert_array_equal(m.precision, [[0.25]])
    assert m.logdet == pytest.approx(np.log(4.0))


def test_build_model_near_degenerate():
    m = build_model(ChainSpec((1, 1), (0.999999,)))
    assert m.logdet == pytest.approx(np.log(1 - 0.999999**2), rel=1e-9)
    assert m.chol.logdet == pytest.approx(m.logdet, rel=1e-6)
    assert np.max(np.abs(m.covariance @ m.precision - np.eye(2))) <= 1e-9


def test_model_invariants_on_fuzz_corpus():
    for spec in fuzz_specs(count=500):
        C, A = markov_covariance(spec), markov_precision(spec)
        assert np.max(np.abs(C @ A - np.eye(spec.n))) <= 1e-9
        i, j = np.indices(A.shape)
        assert np.all(A[np.abs(i - j) >= 2] == 0.0)
        ld = markov_logdet(spec)
        assert ld == pytest.approx(cholesky(C).logdet, rel=1e-10, abs=1e-12)


def test_model_logpdf_matches_scipy():
    from scipy.stats import multivariate_normal

    spec = ChainSpec((1.0, 2.0, 0.5), (0.3, -0.6))
    m = build_model(spec)
    x = np.array([[0.1, -0.5, 0.2], [1.0, 2.0, -1.0]])
    np.testing.assert_allclose(m.logpdf(x), multivariate_normal(cov=m.covariance).logpdf(x), rtol=1e-12)


def test_from_covariance_generic():
    C = np.array([[1, 0.5, 0.5], [0.5, 1, 0.5], [0.5, 0.5, 1.0]])
    m = GaussianModel.from_covariance(C)
    assert m.spec is None
    assert m.logdet == pytest.approx(np.log(cofactor_det(C)))
    np.testing.assert_allclose(m.covariance @ m.precision, np.eye(3), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    rho=st.lists(st.floats(-0.95, 0.95), min_size=1, max_size=8),
    scale_seed=st.integers(0, 10**6),
)
def test_correlation_does_not_depend_on_sigma(rho, scale_seed):
    n = len(rho) + 1
    sigma = np.random.default_rng(scale_seed).uniform(0.1, 10, n)
    C = markov_covariance(ChainSpec(sigma, rho))
    R = C / np.outer(sigma, sigma)
    np.testing.assert_allclose(R, markov_covariance(ChainSpec.unit(rho)), rtol=1e-12, atol=1e-15)
