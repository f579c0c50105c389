"""
Monte Carlo for ``X = int_0^t B_s**2 ds`` on discretized Brownian paths.

Paths are built from Gaussian increments on a uniform grid and ``X`` is
the trapezoid sum.  Paths are drawn in fixed-size batches, batch ``k``
from stream ``seed.generator(k)``, so output does not depend on the
number of threads.
"""
from __future__ import absolute_import, division, print_function

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..exceptions import DegenerateConditioningError, DomainError
from ..utils import null_logger
from .grid import PathSampleConfig

__all__ = ['L2Sample', 'MCEstimate', 'wilson_interval',
           'sample_l2_functional', 'l2_sampler', 'mc_smallball',
           'mc_conditional']

MIN_HITS = 30


@dataclass(frozen=True)
class L2Sample:
    """Per path: the trapezoid integral and the values at ``times``."""

    integrals: np.ndarray
    skeletons: np.ndarray
    times: tuple

    def __len__(self):
        return self.integrals.size

    def __iter__(self):
        return zip(self.integrals, self.skeletons)


@dataclass(frozen=True)
class MCEstimate:
    """Binomial proportion with its 95% Wilson half-width.

    Unpacks as ``p_hat, ci_halfwidth``.
    """

    p_hat: float
    ci_halfwidth: float
    hits: int
    trials: int
    reliable: bool = True

    def __iter__(self):
        return iter((self.p_hat, self.ci_halfwidth))


def wilson_interval(successes, total, confidence=0.95):
    if total <= 0:
        return (0.0, 0.0)
    z = stats.norm.ppf(0.5 + confidence / 2.0)
    p = successes / total
    denom = 1.0 + z * z / total
    center = (p + z * z / (2.0 * total)) / denom
    spread = z * np.sqrt((p * (1.0 - p) + z * z / (4.0 * total)) / total) / denom
    return (max(0.0, center - spread), min(1.0, center + spread))


def _estimate(successes, total, reliable=True):
    lower, upper = wilson_interval(successes, total)
    return MCEstimate(p_hat=successes / total,
                      ci_halfwidth=(upper - lower) / 2.0,
                      hits=int(successes), trials=int(total),
                      reliable=reliable)


def _grid_index(times, steps, horizon):
    idx = np.rint(np.asarray(times, dtype=float) / horizon * steps).astype(int)
    return np.clip(idx, 0, steps)


def _draw_batch(config, horizon, batch, count, index):
    rng = config.seed.generator(batch)
    dt = horizon / config.steps
    paths = np.cumsum(rng.standard_normal((count, config.steps)), axis=1)
    paths *= np.sqrt(dt)
    sq = paths * paths
    integrals = dt * (sq[:, :-1].sum(axis=1) + 0.5 * sq[:, -1])
    skeleton = np.zeros((count, len(index)))
    for j, i in enumerate(index):
        if i > 0:
            skeleton[:, j] = paths[:, i - 1]
    return integrals, skeleton


def sample_l2_functional(config, horizon, times=(), logger=None):
    """Draw ``config.n_paths`` discretized paths on ``[0, horizon]``.

    Returns
    -------
    `L2Sample`
        Skeleton values are taken at the grid points nearest to
        ``times``.
    """
    logger = null_logger() if logger is None else logger
    if not horizon > 0:
        raise DomainError("horizon must be positive, got %r" % (horizon,))
    times = tuple(float(u) for u in times)
    if any(not 0 < u <= horizon for u in times):
        raise DomainError("sample times must lie in (0, %r]" % (horizon,))
    index = _grid_index(times, config.steps, horizon)

    sizes = [config.batch_size] * (config.n_paths // config.batch_size)
    if config.n_paths % config.batch_size:
        sizes.append(config.n_paths % config.batch_size)
    logger.debug("sampling %d paths x %d steps in %d batches on %d threads" % (
        config.n_paths, config.steps, len(sizes), config.threads))

    def work(batch):
        return _draw_batch(config, horizon, batch, sizes[batch], index)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    else:
        parts = [work(b) for b in range(len(sizes))]

    integrals = np.concatenate([p[0] for p in parts])
    skeletons = np.concatenate([p[1] for p in parts], axis=0)
    return L2Sample(integrals=integrals, skeletons=skeletons, times=times)


def l2_sampler(steps, horizon, batch_size=2000, threads=1):
    """A ``sampler(n, seed)`` of ``int_0^t B**2`` for
    :func:`exptauber.estimators.mc_laplace`."""
    def sampler(n, seed):
        config = PathSampleConfig(steps=steps, n_paths=int(n), seed=seed,
                                  batch_size=batch_size, threads=threads)
        return sample_l2_functional(config, horizon).integrals
    return sampler


def mc_smallball(epsilon, config, horizon, logger=None, min_hits=MIN_HITS):
    """Fraction of paths with ``int_0^t B**2 <= eps``.

    The estimate is flagged unreliable when fewer than ``min_hits``
    paths satisfy the event.
    """
    logger = null_logger() if logger is None else logger
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % (epsilon,))
    sample = sample_l2_functional(config, horizon, logger=logger)
    hits = int(np.count_nonzero(sample.integrals <= epsilon))
    reliable = hits >= min_hits
    if not reliable:
        logger.warning("only %d of %d paths below eps=%g; estimate is "
                       "unreliable" % (hits, config.n_paths, epsilon))
    return _estimate(hits, config.n_paths, reliable=reliable)


def mc_conditional(grid, boxes, epsilon, config, horizon=None, logger=None,
                   min_hits=MIN_HITS):
    """Fraction of paths with skeleton in ``boxes`` among those with
    ``int_0^t B**2 <= eps``."""
    logger = null_logger() if logger is None else logger
    t = grid.horizon if horizon is None else float(horizon)
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % (epsilon,))
    if len(boxes) != len(grid):
        raise DomainError("%d boxes for %d times" % (len(boxes), len(grid)))
    sample = sample_l2_functional(config, t, times=grid.times, logger=logger)
    cond = sample.integrals <= epsilon
    hits = int(np.count_nonzero(cond))
    if hits == 0:
        raise DegenerateConditioningError(
            "no path of %d has int B^2 <= %g" % (config.n_paths, epsilon))
    inside = int(np.count_nonzero(boxes.contains(sample.skeletons[cond])))
    reliable = hits >= min_hits
    if not reliable:
        logger.warning("conditioning event hit by %d paths only" % (hits,))
    return _estimate(inside, hits, reliable=reliable)
