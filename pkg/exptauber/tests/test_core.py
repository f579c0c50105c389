from __future__ import absolute_import, division, print_function

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ..core import (ExponentPair, RateBand, entropy_H, identity_residual,
                    laplace_principle_rate, markov_lambda,
                    markov_smallball_rate, pair_from_alpha, pair_from_beta,
                    r_from_s, rlower_band_from_slower, s_from_r,
                    sandwich_epsilon, slower_band_from_rlower)
from ..exceptions import DomainError


def test_pair_from_alpha():
    pair = pair_from_alpha(0.5)
    assert pair.alpha == 0.5
    assert pair.beta == 1.0
    assert_allclose(pair_from_alpha(2. / 3).beta, 2.0, rtol=1e-14)


def test_pair_from_beta():
    pair = pair_from_beta(1.0)
    assert pair.alpha == 0.5
    assert_allclose(1.0 / pair.alpha, 1.0 / pair.beta + 1.0, rtol=1e-15)


@pytest.mark.parametrize('alpha', [0.0, 1.0, -0.5, 1.5, np.nan])
def test_pair_rejects_alpha(alpha):
    with pytest.raises(DomainError):
        pair_from_alpha(alpha)


def test_pair_rejects_inconsistent_fields():
    with pytest.raises(DomainError):
        ExponentPair(0.5, 2.0)


def test_conversion_examples():
    half = pair_from_alpha(0.5)
    assert s_from_r(-2.0, half) == -1.0
    assert r_from_s(-1.0, half) == -2.0
    assert s_from_r(0.0, half) == 0.0
    assert r_from_s(0.0, half) == 0.0

    pair = pair_from_alpha(0.666666666667)
    s = s_from_r(-1.0, pair)
    assert_allclose(s, -0.148148, atol=1e-6)
    assert identity_residual(-1.0, s, pair) < 1e-12


def test_conversion_roundtrip():
    rng = np.random.default_rng(1)
    for alpha, s in zip(rng.uniform(0.05, 0.95, 50), -rng.uniform(0.01, 10, 50)):
        pair = pair_from_alpha(alpha)
        r = r_from_s(s, pair)
        assert r < 0
        assert identity_residual(r, s, pair) < 1e-12
        assert_allclose(s_from_r(r, pair), s, rtol=1e-12)


@pytest.mark.parametrize('func', [s_from_r, r_from_s])
def test_positive_rate_rejected(func):
    with pytest.raises(DomainError):
        func(0.5, pair_from_alpha(0.5))
    with pytest.raises(DomainError):
        func(-np.inf, pair_from_alpha(0.5))


def test_entropy():
    assert_allclose(entropy_H(0.5), np.log(2.0), rtol=1e-15)
    for alpha in (0.1, 0.3, 0.7, 0.9):
        pair = pair_from_alpha(alpha)
        assert_allclose(np.exp(entropy_H(alpha)) * alpha,
                        pair.beta ** (1.0 - alpha), rtol=1e-13)


def test_entropy_concave():
    alphas = np.linspace(0.01, 0.99, 99)
    values = np.array([entropy_H(a) for a in alphas])
    assert np.all(np.diff(values, 2) < 0)
    assert alphas[np.argmax(values)] == pytest.approx(0.5)
    assert_allclose(values, values[::-1], rtol=1e-12)
    assert np.all(values < np.log(2.0) + 1e-15)


def test_band_alpha_half():
    band = slower_band_from_rlower(-1.0, pair_from_alpha(0.5))
    assert_allclose(band.as_tuple(), (-1.0, -0.25), rtol=1e-12)


@pytest.mark.parametrize('alpha', [0.1, 0.25, 0.5, 0.75, 0.9])
def test_band_inversion(alpha):
    pair = pair_from_alpha(alpha)
    s_lower = -0.7
    band = rlower_band_from_slower(s_lower, pair)
    assert band.lower <= band.upper
    assert_allclose(slower_band_from_rlower(band.upper, pair).lower, s_lower,
                    rtol=1e-12)
    assert_allclose(slower_band_from_rlower(band.lower, pair).upper, s_lower,
                    rtol=1e-12)


def test_rate_band():
    band = RateBand(-2.0, -1.0)
    assert band.width == 1.0
    assert band.contains(-1.5)
    assert not band.contains(-0.99)
    assert band.contains(-0.99, rel_tol=0.05)
    assert_allclose(band.widened(0.1).as_tuple(), (-2.2, -0.9), rtol=1e-15)
    assert band.widened(2.0).upper == 0.0
    with pytest.raises(DomainError):
        RateBand(-1.0, -2.0)


def test_markov_step():
    half = pair_from_alpha(0.5)
    assert_allclose(markov_lambda(-2.0, 0.5, half), 4.0, rtol=1e-14)
    rng = np.random.default_rng(2)
    for alpha, r in zip(rng.uniform(0.05, 0.95, 20), -rng.uniform(0.1, 5, 20)):
        pair = pair_from_alpha(alpha)
        assert_allclose(markov_smallball_rate(r, pair), s_from_r(r, pair),
                        rtol=1e-12)
    with pytest.raises(DomainError):
        markov_lambda(-1.0, 0.0, half)


def test_laplace_principle_matches_conversion():
    rng = np.random.default_rng(3)
    for alpha, s in zip(rng.uniform(0.05, 0.95, 20), -rng.uniform(0.1, 5, 20)):
        pair = pair_from_alpha(alpha)
        assert_allclose(laplace_principle_rate(s, pair), r_from_s(s, pair),
                        rtol=1e-12)
    assert laplace_principle_rate(0.0, pair_from_alpha(0.5)) == 0.0


def test_sandwich_epsilon():
    half = pair_from_alpha(0.5)
    assert_allclose(sandwich_epsilon(4.0, -1.0, half), 0.5, rtol=1e-15)
    lam = 37.0
    eps = sandwich_epsilon(lam, -2.0, half)
    assert_allclose(lam ** -0.5, 2.0 ** -0.5 * eps, rtol=1e-14)
    with pytest.raises(DomainError):
        sandwich_epsilon(0.0, -1.0, half)
