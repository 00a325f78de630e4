import numpy as np
import pytest

from gaussmarkov.diagnostics import (
    DEFAULT_TOL,
    diagnose,
    regression_coefficient,
    test_factorization as factorization,
    test_regression as regression,
    test_tridiagonal as tridiagonal,
)
from gaussmarkov.linalg_core import NotPositiveDefinite
from gaussmarkov.markov_model import ChainSpec, markov_covariance
from oracles import markov_corpus, non_markov_corpus

EQUI3 = np.array([[1, 0.5, 0.5], [0.5, 1, 0.5], [0.5, 0.5, 1.0]])
MARKOV3 = markov_covariance(ChainSpec((1, 1, 1), (0.5, 0.5)))


def test_tridiagonal_examples():
    ok, worst = tridiagonal(markov_covariance(ChainSpec((1, 1, 1, 1), (0.5, 0.3, -0.2))))
    assert ok and worst <= 1e-9
    assert tridiagonal(np.eye(4)) == (True, 0.0)
    ok, worst = tridiagonal(EQUI3)
    # inverse of EQUI3 is (3/2)I - (1/2)J: corner -1/2 over diagonal 3/2
    assert not ok and worst == pytest.approx(1 / 3, rel=1e-12)


def test_factorization_examples():
    assert factorization(MARKOV3) == (True, 0.0)
    ok, worst = factorization(EQUI3)
    assert not ok and worst == pytest.approx(0.25, rel=1e-14)
    assert factorization([[2.0, 0.3], [0.3, 1.0]]) == (True, 0.0)


def test_regression_examples():
    ok, worst = regression(MARKOV3)
    assert ok and worst <= 1e-15
    ok, worst = regression(EQUI3)
    # eta = (1/3, 1/3) from [[1,.5],[.5,1]] eta = (.5,.5)
    assert not ok and worst == pytest.approx(1 / 3, rel=1e-14)
    assert regression([[1.0, 0.9], [0.9, 1.0]]) == (True, 0.0)


def test_diagnose_examples():
    d = diagnose(MARKOV3)
    assert d.all_pass and d.consistent and d.tolerance == DEFAULT_TOL
    assert diagnose(np.eye(5)).all_pass
    d = diagnose(EQUI3)
    assert not d.tridiagonal_pass and not d.factorization_pass and not d.regression_pass
    assert d.consistent
    assert set(d.to_dict()) >= {"tridiagonal_worst", "factorization_worst", "regression_worst", "all_pass"}


def test_diagnose_rejects_non_spd():
    with pytest.raises(NotPositiveDefinite):
        diagnose([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])


@pytest.mark.parametrize(
    "c, l, expected",
    [
        ([[1, 0.5], [0.5, 1]], 1, 0.5),
        ([[4, 0.5 * 2 * 4], [0.5 * 2 * 4, 16]], 1, 1.0),
        (np.eye(3), 2, 0.0),
    ],
)
def test_regression_coefficient(c, l, expected):
    assert regression_coefficient(c, l) == pytest.approx(expected, rel=1e-15)


def test_regression_coefficient_range():
    with pytest.raises(IndexError):
        regression_coefficient(np.eye(3), 0)
    with pytest.raises(IndexError):
        regression_coefficient(np.eye(3), 3)


def test_regression_coefficient_is_slope_of_markov_regression(rng):
    spec = ChainSpec((1.5, 0.7, 2.0, 1.1), (0.4, -0.8, 0.6))
    C = markov_covariance(spec)
    for l in range(2, 4):
        eta = np.linalg.solve(C[:l, :l], C[:l, l])
        assert eta[-1] == pytest.approx(regression_coefficient(C, l), rel=1e-12)


def test_equivalence_on_corpora():
    for C in markov_corpus(seed=11, count=200):
        d = diagnose(C)
        assert d.all_pass, d
        assert d.tridiagonal_worst <= 1e-9
    for C in non_markov_corpus(seed=12, count=200):
        d = diagnose(C)
        assert d.consistent and not d.all_pass, d


def test_factorization_scale_invariant(rng):
    for C in markov_corpus(seed=3, count=20) + non_markov_corpus(seed=4, count=20):
        d = rng.uniform(0.01, 100, C.shape[0])
        scaled = C * np.outer(d, d)
        a, b = factorization(C), factorization(scaled)
        assert a[0] == b[0]
        assert b[1] == pytest.approx(a[1], rel=1e-9, abs=1e-14)
        assert diagnose(scaled).tridiagonal_pass == diagnose(C).tridiagonal_pass
