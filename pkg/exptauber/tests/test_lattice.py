from __future__ import absolute_import, division, print_function

from unittest import mock

import numpy as np
import pytest
from numpy.testing import assert_allclose

from ..core import pair_from_beta
from ..exceptions import DomainError
from ..lattice import (LatticeDistribution, lattice_cdf, lattice_laplace,
                       lattice_laplace_lower_bound, lattice_log_cdf,
                       lattice_log_laplace, lattice_pmf, lattice_sample,
                       lattice_support_index, lattice_theoretic_rates)
from ..numerics import SeedSpec


@pytest.fixture
def dist():
    return LatticeDistribution(q=0.5, s=-1.0, beta=1.0)


@pytest.mark.parametrize(('q', 's', 'beta'), [(1.0, -1.0, 1.0),
                                              (0.0, -1.0, 1.0),
                                              (0.5, 0.0, 1.0),
                                              (0.5, -np.inf, 1.0),
                                              (0.5, -1.0, 0.0)])
def test_invalid_parameters(q, s, beta):
    with pytest.raises(DomainError):
        LatticeDistribution(q=q, s=s, beta=beta)


def test_pmf_first_points(dist):
    assert_allclose([lattice_pmf(dist, n) for n in (1, 2, 3)],
                    [1 - np.exp(-2.0), np.exp(-2.0) - np.exp(-4.0),
                     np.exp(-4.0) - np.exp(-8.0)], rtol=1e-14)
    assert_allclose(lattice_pmf(dist, 1), 0.864665, atol=1e-6)
    assert_allclose(lattice_pmf(dist, 2), 0.117019, atol=1e-6)
    with pytest.raises(DomainError):
        lattice_pmf(dist, 0)


def test_pmf_telescopes(dist):
    for n in (1, 5, 10, 40):
        total = sum(lattice_pmf(dist, k) for k in range(1, n + 1))
        assert_allclose(total, 1.0 - np.exp(-2.0 ** n), atol=1e-14)


def test_point():
    dist = LatticeDistribution(q=0.25, s=-1.0, beta=1.0)
    assert dist.point(1) == 0.25
    assert_allclose(dist.point(np.arange(1, 4)), [0.25, 0.0625, 0.015625])


def test_support_index():
    dist = LatticeDistribution(q=0.1, s=-1.0, beta=2.0)
    assert lattice_support_index(dist, 0.5) == 1
    assert lattice_support_index(dist, 0.1) == 1
    assert lattice_support_index(dist, dist.q ** 3) == 3
    assert lattice_support_index(dist, dist.q ** 3 * 0.99) == 4
    assert lattice_support_index(dist, dist.q ** 3 * 1.01) == 3
    with pytest.raises(DomainError):
        lattice_support_index(dist, 0.0)


def test_cdf(dist):
    assert lattice_cdf(dist, 0.5) == 1.0
    assert lattice_cdf(dist, 0.9) == 1.0
    assert_allclose(lattice_cdf(dist, 0.25), np.exp(-2.0), rtol=1e-15)
    assert_allclose(lattice_cdf(dist, 0.3), np.exp(-2.0), rtol=1e-15)
    assert_allclose(lattice_cdf(dist, 0.2), np.exp(-4.0), rtol=1e-15)


def test_cdf_oscillation(dist):
    for n in range(2, 21):
        eps = dist.q ** n
        assert_allclose(eps * lattice_log_cdf(dist, eps), -0.5, rtol=1e-12)
        eps = dist.q ** n * (1 - 1e-9)
        assert_allclose(eps * lattice_log_cdf(dist, eps), -1.0, atol=1e-8)


def test_laplace_at_zero(dist):
    assert_allclose(lattice_log_laplace(dist, 0.0), 0.0, atol=1e-14)
    assert_allclose(lattice_laplace(dist, 0.0), 1.0, rtol=1e-14)


def test_laplace_matches_direct_sum(dist):
    lam = 3.0
    direct = sum(np.exp(-lam * dist.q ** n) * lattice_pmf(dist, n)
                 for n in range(1, 60))
    assert_allclose(lattice_laplace(dist, lam), direct, rtol=1e-13)


def test_laplace_rate_range(dist):
    # log L(lambda) / sqrt(lambda) moves between -1.5 and -sqrt(2)
    for lam in (1e4, 3e4, 1e5, 1e6):
        value = lam ** -0.5 * lattice_log_laplace(dist, lam)
        assert np.isfinite(value)
        assert -1.52 <= value <= -1.40


def test_laplace_lower_bound(dist):
    for lam in np.geomspace(1e3, 1e6, 13):
        assert lattice_laplace_lower_bound(dist, lam, 0.5) <= \
            lattice_log_laplace(dist, lam)


def test_laplace_validation(dist):
    with pytest.raises(DomainError):
        lattice_log_laplace(dist, -1.0)
    with pytest.raises(DomainError):
        lattice_log_laplace(dist, 1.0, rel_tol=0.0)
    with pytest.raises(DomainError):
        lattice_log_laplace(dist, 1.0, max_terms=0)


def test_laplace_truncation_logged():
    slow = LatticeDistribution(q=0.99, s=-1.0, beta=1.0)
    logger = mock.MagicMock()
    cut = lattice_log_laplace(slow, 1.0, max_terms=50, logger=logger)
    assert logger.warning.call_count == 1
    assert 'cut at 50 terms' in logger.warning.call_args[0][0]
    assert cut < lattice_log_laplace(slow, 1.0)

    logger = mock.MagicMock()
    lattice_log_laplace(LatticeDistribution(0.5, -1.0, 1.0), 1.0,
                        logger=logger)
    assert not logger.warning.called


def test_theoretic_rates(dist):
    pair = pair_from_beta(1.0)
    rates = lattice_theoretic_rates(dist, pair)
    assert rates.s_lower == -1.0
    assert rates.s_upper == -0.5
    assert_allclose(rates.r_upper, -np.sqrt(2.0), rtol=1e-14)
    assert_allclose(rates.r_lower_band.as_tuple(), (-1.5, -1.0), rtol=1e-15)
    with pytest.raises(DomainError):
        lattice_theoretic_rates(dist, pair_from_beta(2.0))


def test_sample_on_lattice(dist):
    draws = lattice_sample(dist, 10000, SeedSpec(3))
    n = np.log(draws) / np.log(dist.q)
    assert_allclose(n, np.round(n), atol=1e-9)
    assert draws.max() <= dist.q


def test_sample_deterministic(dist):
    a = dist.sample(1000, SeedSpec(11))
    b = dist.sample(1000, SeedSpec(11))
    np.testing.assert_array_equal(a, b)
    c = dist.sample(1000, SeedSpec(11, 1))
    assert not np.array_equal(a, c)


def test_sample_distribution(dist):
    draws = dist.sample(100000, SeedSpec(5))
    for eps in (0.5, 0.25, 0.125):
        assert abs(np.mean(draws <= eps) - lattice_cdf(dist, eps)) < 0.005


def test_sample_clamped(dist):
    draws = lattice_sample(dist, 1000, SeedSpec(2), n_max=2)
    assert draws.min() == 0.25
    with pytest.raises(DomainError):
        lattice_sample(dist, 0)
