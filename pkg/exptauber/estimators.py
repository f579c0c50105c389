"""
Finite-grid surrogates for the upper and lower limits of Laplace and
small-ball rates, Monte Carlo Laplace transforms, and the Chernoff and
sandwich inequalities.

An upper (lower) limit is approximated by the sup (inf) over the
trailing part of a geometric grid: the largest ``lambda`` values or the
smallest ``eps`` values.
"""
from __future__ import absolute_import, division, print_function

from dataclasses import dataclass, field

import numpy as np

from .core import check_rate, sandwich_epsilon
from .exceptions import DomainError, EmptyWindowError

__all__ = ['TailGrid', 'RateEstimate', 'geometric_grid',
           'laplace_rate_window', 'smallball_rate_window', 'mc_laplace',
           'chernoff_log_bound', 'chernoff_smallball_bound',
           'sandwich_upper', 'sandwich_rate_bound']

# slack for log-values computed as log of numbers that should be <= 1
_LOG_SLACK = 1e-12


@dataclass(frozen=True)
class TailGrid:
    """Sample points ``(x, log v)`` with ``v`` in ``(0, 1]``.

    Abscissae are strictly increasing (``lambda`` grids) or strictly
    decreasing (``eps`` grids).
    """

    abscissae: np.ndarray
    log_values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=float)
        lv = np.asarray(self.log_values, dtype=float)
        if x.ndim != 1 or x.shape != lv.shape:
            raise DomainError("abscissae and values must be 1-d and of equal "
                              "length")
        if x.size == 0:
            raise EmptyWindowError("empty grid")
        if np.any(x <= 0):
            raise DomainError("abscissae must be positive")
        steps = np.diff(x)
        if not (np.all(steps > 0) or np.all(steps < 0)):
            raise DomainError("abscissae must be strictly monotone")
        if np.any(lv == -np.inf):
            raise DomainError("zero value on the grid at x=%g; the grid "
                              "reaches below the resolution of the data" % (
                                  x[np.argmax(lv == -np.inf)]))
        if np.any(~np.isfinite(lv)) or np.any(lv > _LOG_SLACK):
            raise DomainError("values must lie in (0, 1]")
        object.__setattr__(self, 'abscissae', x)
        object.__setattr__(self, 'log_values', np.minimum(lv, 0.0))

    @classmethod
    def from_values(cls, abscissae, values):
        values = np.asarray(values, dtype=float)
        with np.errstate(divide='ignore'):
            return cls(abscissae, np.log(values))

    @classmethod
    def from_log_values(cls, abscissae, log_values):
        return cls(abscissae, log_values)

    @property
    def increasing(self):
        return self.abscissae.size < 2 or self.abscissae[1] > self.abscissae[0]

    def __len__(self):
        return self.abscissae.size


@dataclass(frozen=True)
class RateEstimate:
    """Sup and inf of the transformed values over the trailing window."""

    window_sup: float
    window_inf: float
    grid: list = field(repr=False)
    window_fraction: float = 0.5

    def as_dict(self):
        return dict(window_sup=self.window_sup, window_inf=self.window_inf,
                    window_fraction=self.window_fraction,
                    points=len(self.grid))


def geometric_grid(lo, hi, points, decreasing=False):
    grid = np.geomspace(lo, hi, int(points))
    return grid[::-1] if decreasing else grid


def _window(grid, transformed, window_fraction):
    if not 0 < window_fraction <= 1:
        raise DomainError("window_fraction must lie in (0, 1], got %r" % (
            window_fraction,))
    n = len(transformed)
    k = int(np.ceil(window_fraction * n - 1e-9))
    if k < 1:
        raise EmptyWindowError("window of %g over %d points is empty" % (
            window_fraction, n))
    tail = transformed[n - k:]
    pairs = list(zip(grid.abscissae.tolist(), transformed.tolist()))
    return RateEstimate(window_sup=float(np.max(tail)),
                        window_inf=float(np.min(tail)),
                        grid=pairs, window_fraction=window_fraction)


def laplace_rate_window(grid, alpha, window_fraction=0.5):
    """Window estimate of the Laplace rate ``lambda**-alpha log L``.

    :param grid: `TailGrid` of ``(lambda, L(lambda))``, lambda increasing
    """
    if not grid.increasing:
        raise DomainError("lambda grid must be increasing")
    transformed = grid.abscissae ** (-alpha) * grid.log_values
    return _window(grid, transformed, window_fraction)


def smallball_rate_window(grid, beta, window_fraction=0.5):
    """Window estimate of the small-ball rate ``eps**beta log P``.

    :param grid: `TailGrid` of ``(eps, P(X <= eps))``, eps decreasing
    """
    if len(grid) > 1 and grid.increasing:
        raise DomainError("eps grid must be decreasing")
    transformed = grid.abscissae ** beta * grid.log_values
    return _window(grid, transformed, window_fraction)


def mc_laplace(sampler, lam, n, seed, logger=None):
    """Monte Carlo estimate of ``E(exp(-lambda X))``.

    ``sampler(n, seed)`` returns ``n`` draws of ``X``; ``inf`` marks a
    draw outside the event, which contributes 0.

    Returns
    -------
    estimate, std_error : float
    """
    if n < 2:
        raise DomainError("need at least 2 samples, got %r" % (n,))
    if not lam >= 0:
        raise DomainError("lambda must be >= 0, got %r" % (lam,))
    x = np.asarray(sampler(n, seed), dtype=float)
    if np.any(x < 0):
        raise DomainError("sampler produced negative values")
    with np.errstate(invalid='ignore', over='ignore'):
        w = np.where(np.isfinite(x), np.exp(-lam * np.where(np.isfinite(x),
                                                            x, 0.0)), 0.0)
    estimate = float(np.mean(w))
    std_error = float(np.std(w, ddof=1) / np.sqrt(x.size))
    if logger is not None:
        logger.debug("mc_laplace lambda=%g n=%d -> %g +- %g" % (
            lam, x.size, estimate, std_error))
    return estimate, std_error


def chernoff_log_bound(log_laplace, epsilon, lambda_grid):
    """``min_lambda (lambda eps + log L(lambda))``, the log of the
    exponential Markov bound on ``P(X <= eps)``."""
    lams = np.asarray(lambda_grid, dtype=float).ravel()
    if lams.size == 0:
        raise EmptyWindowError("empty lambda grid")
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % (epsilon,))
    values = [lam * epsilon + float(log_laplace(lam)) for lam in lams]
    return float(min(values))


def chernoff_smallball_bound(laplace, epsilon, lambda_grid):
    """``min_lambda exp(lambda eps) L(lambda)``, an upper bound on
    ``P(X <= eps)``."""
    def log_laplace(lam):
        with np.errstate(divide='ignore'):
            return np.log(laplace(lam))
    return float(np.exp(chernoff_log_bound(log_laplace, epsilon,
                                           lambda_grid)))


def sandwich_upper(cdf_at_eps, lam, epsilon):
    """``P(X <= eps) + exp(-lambda eps)``, an upper bound on the Laplace
    transform at ``lambda``."""
    if cdf_at_eps < 0 or cdf_at_eps > 1 or lam < 0 or epsilon < 0:
        raise DomainError("need 0 <= cdf <= 1 and lambda, eps >= 0")
    return float(cdf_at_eps + np.exp(-lam * epsilon))


def sandwich_rate_bound(log_cdf, lam, s_lower, pair):
    """Upper bound on ``lambda**-alpha log L(lambda)`` from the sandwich
    inequality at ``eps = (|s|/lambda)**(alpha/beta)``."""
    s_lower = check_rate(s_lower, 's_lower')
    eps = sandwich_epsilon(lam, s_lower, pair)
    log_bound = np.logaddexp(float(log_cdf(eps)), -lam * eps)
    return float(lam ** (-pair.alpha) * log_bound)
