from __future__ import absolute_import, division, print_function

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from ...estimators import mc_laplace
from ...exceptions import DegenerateConditioningError, DomainError
from ...numerics import SeedSpec
from ..grid import Box, BoxFamily, PathSampleConfig, TimeGrid
from ..kernel import l2_log_laplace
from ..paths import (MCEstimate, l2_sampler, mc_conditional, mc_smallball,
                     sample_l2_functional, wilson_interval)
from ..rates import condbb_rate, l2_smallball_rate


def test_wilson_interval():
    lower, upper = wilson_interval(50, 100)
    assert_allclose(0.5 - lower, upper - 0.5, rtol=1e-12)
    assert_allclose(upper - lower, 2 * 0.0962, atol=2e-3)
    lower, upper = wilson_interval(0, 100)
    assert 0.0 <= lower < 1e-12
    assert 0.0 < upper < 0.05
    assert wilson_interval(0, 0) == (0.0, 0.0)


def test_estimate_unpacks():
    p_hat, half = MCEstimate(0.25, 0.01, 25, 100)
    assert (p_hat, half) == (0.25, 0.01)


def test_sample_shapes():
    config = PathSampleConfig(steps=50, n_paths=130, batch_size=40)
    sample = sample_l2_functional(config, 2.0, times=(0.5, 2.0))
    assert len(sample) == 130
    assert sample.skeletons.shape == (130, 2)
    assert sample.times == (0.5, 2.0)
    assert np.all(sample.integrals >= 0)


def test_sample_independent_of_threads():
    single = PathSampleConfig(steps=40, n_paths=550, seed=SeedSpec(8),
                              batch_size=100, threads=1)
    several = PathSampleConfig(steps=40, n_paths=550, seed=SeedSpec(8),
                               batch_size=100, threads=3)
    a = sample_l2_functional(single, 1.0, times=(1.0,))
    b = sample_l2_functional(several, 1.0, times=(1.0,))
    assert_array_equal(a.integrals, b.integrals)
    assert_array_equal(a.skeletons, b.skeletons)


def test_sample_seed_matters():
    a = sample_l2_functional(PathSampleConfig(20, 100, SeedSpec(1)), 1.0)
    b = sample_l2_functional(PathSampleConfig(20, 100, SeedSpec(2)), 1.0)
    assert not np.array_equal(a.integrals, b.integrals)


def test_sample_moments():
    # E int_0^1 B^2 = 1/2 and Var B_1 = 1
    config = PathSampleConfig(steps=200, n_paths=20000, seed=SeedSpec(3))
    sample = sample_l2_functional(config, 1.0, times=(1.0,))
    assert abs(sample.integrals.mean() - 0.5) < 0.02
    assert abs(sample.skeletons[:, 0].var() - 1.0) < 0.05


def test_sample_validation():
    config = PathSampleConfig(steps=10, n_paths=10)
    with pytest.raises(DomainError):
        sample_l2_functional(config, 0.0)
    with pytest.raises(DomainError):
        sample_l2_functional(config, 1.0, times=(1.5,))
    with pytest.raises(DomainError):
        PathSampleConfig(steps=1, n_paths=10)


def test_mc_laplace_l2():
    sampler = l2_sampler(200, 1.0, batch_size=500)
    est, se = mc_laplace(sampler, 0.5, 20000, SeedSpec(4))
    exact = np.exp(l2_log_laplace(0.5, 1.0))
    assert abs(est - exact) < 4 * se + 0.01 * exact


def test_mc_smallball_large_epsilon():
    config = PathSampleConfig(steps=100, n_paths=2000, seed=SeedSpec(7))
    p_hat, half = mc_smallball(10.0, config, 1.0)
    assert p_hat > 0.999
    assert half < 0.01


def test_mc_smallball_unreliable():
    config = PathSampleConfig(steps=100, n_paths=500, seed=SeedSpec(7))
    est = mc_smallball(0.05, config, 1.0, min_hits=10 ** 6)
    assert not est.reliable
    with pytest.raises(DomainError):
        mc_smallball(0.0, config, 1.0)


def test_mc_conditional_everything():
    config = PathSampleConfig(steps=100, n_paths=2000, seed=SeedSpec(9))
    grid = TimeGrid(1.0, (0.5, 1.0))
    est = mc_conditional(grid, BoxFamily.everything(2), 0.3, config)
    assert est.p_hat == 1.0
    assert est.trials == est.hits


def test_mc_conditional_box():
    config = PathSampleConfig(steps=100, n_paths=4000, seed=SeedSpec(9))
    grid = TimeGrid(1.0, (1.0,))
    est = mc_conditional(grid, BoxFamily([Box(0.5, 1.0)]), 0.5, config)
    assert 0.0 < est.p_hat < 0.5


def test_mc_conditional_symmetric_box():
    # unconditionally P(|B_0.5| <= 0.1) is about 0.11
    grid = TimeGrid(1.0, (0.5,))
    boxes = BoxFamily([Box(-0.1, 0.1)])
    config = PathSampleConfig(steps=100, n_paths=40000, seed=SeedSpec(13))
    loose = mc_conditional(grid, boxes, 0.1, config)
    tight = mc_conditional(grid, boxes, 0.05, config)
    assert loose.reliable and tight.reliable
    assert tight.p_hat > 0.22
    assert tight.p_hat > loose.p_hat


def test_mc_conditional_degenerate():
    config = PathSampleConfig(steps=100, n_paths=500, seed=SeedSpec(9))
    grid = TimeGrid(1.0, (1.0,))
    with pytest.raises(DegenerateConditioningError):
        mc_conditional(grid, BoxFamily.everything(1), 1e-6, config)
    with pytest.raises(DomainError):
        mc_conditional(grid, BoxFamily.everything(2), 0.1, config)


@pytest.mark.slow
def test_smallball_exponent():
    eps = 0.02
    config = PathSampleConfig(steps=500, n_paths=10 ** 6, seed=SeedSpec(42),
                              threads=4)
    est = mc_smallball(eps, config, 1.0)
    assert est.reliable
    observed = eps * np.log(est.p_hat)
    prefactor = abs(eps * np.log(4 * np.sqrt(eps) / np.sqrt(np.pi)))
    expected = l2_smallball_rate(1.0)
    assert abs(observed - expected) <= 0.15 * abs(expected) + prefactor


@pytest.mark.slow
@pytest.mark.parametrize('gamma', [1.0, 2.0, 5.0])
def test_mc_laplace_l2_many_paths(gamma):
    lam = gamma ** 2 / 2
    sampler = l2_sampler(2000, 1.0, threads=4)
    est, se = mc_laplace(sampler, lam, 200000, SeedSpec(11))
    exact = np.exp(l2_log_laplace(lam, 1.0))
    assert abs(est - exact) < 3 * se + 0.005 * exact


@pytest.mark.slow
def test_mc_conditional_rate_trend():
    grid = TimeGrid(1.0, (1.0,))
    boxes = BoxFamily([Box(0.5, 1.0)])
    config = PathSampleConfig(steps=200, n_paths=10 ** 5, seed=SeedSpec(17),
                              threads=4)
    limit = condbb_rate(grid, boxes)
    assert_allclose(limit, -0.0703125, rtol=1e-14)
    scaled = []
    for eps in (0.1, 0.05):
        est = mc_conditional(grid, boxes, eps, config)
        assert est.reliable and est.hits > 0
        scaled.append(eps * np.log(est.p_hat))
    assert scaled[0] < scaled[1] < limit
