"""
The geometric lattice distribution on ``{q**n : n >= 1}``.

Its distribution function is ``P(X <= eps) = exp(-|s| eps_{n(eps)-1}**-beta)``
with ``eps_0 = inf``, so ``eps**beta log P(X <= eps)`` oscillates between
``s`` (just below a lattice point) and ``q**beta s`` (on a lattice
point).  The lower small-ball limit is therefore ``s`` while the upper
one is ``q**beta s``, which makes the distribution extremal for the
bounds on lower limits.
"""
from __future__ import absolute_import, division, print_function

from dataclasses import dataclass

import numpy as np
from ginga.misc import Bunch

from .core import RateBand, r_from_s
from .exceptions import DomainError
from .numerics import SeedSpec, log_sum_exp

__all__ = ['LatticeDistribution', 'lattice_support_index', 'lattice_log_pmf',
           'lattice_pmf', 'lattice_log_cdf', 'lattice_cdf', 'lattice_sample',
           'lattice_log_laplace', 'lattice_laplace',
           'lattice_laplace_lower_bound', 'lattice_theoretic_rates']

N_MAX = 400
MAX_TERMS = 100000


@dataclass(frozen=True)
class LatticeDistribution:

    q: float
    s: float
    beta: float

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise DomainError("q must lie in (0, 1), got %r" % (self.q,))
        if not (np.isfinite(self.s) and self.s < 0):
            raise DomainError("s must be negative and finite, got %r" % (
                self.s,))
        if not self.beta > 0:
            raise DomainError("beta must be positive, got %r" % (self.beta,))

    def point(self, n):
        return self.q ** n

    def _a(self, n):
        """``|s| * eps_n**-beta``, zero for ``n == 0``."""
        n = np.asarray(n, dtype=float)
        return np.where(n > 0, -self.s * self.q ** (-self.beta * n), 0.0)

    def sample(self, n, seed, n_max=N_MAX, logger=None):
        return lattice_sample(self, n, seed, n_max=n_max, logger=logger)


def lattice_support_index(dist, epsilon):
    """``n(eps) = min{n >= 1 : q**n <= eps}``."""
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % (epsilon,))
    if epsilon >= dist.q:
        return 1
    n = max(1, int(np.ceil(np.log(epsilon) / np.log(dist.q))))
    # the logarithm can land one off at lattice points
    while dist.point(n) > epsilon:
        n += 1
    while n > 1 and dist.point(n - 1) <= epsilon:
        n -= 1
    return n


def lattice_log_pmf(dist, n):
    if int(n) < 1:
        raise DomainError("support index must be >= 1, got %r" % (n,))
    a_prev = float(dist._a(n - 1))
    a_n = float(dist._a(n))
    return -a_prev + float(np.log(-np.expm1(-(a_n - a_prev))))


def lattice_pmf(dist, n):
    """``P(X = q**n) = exp(-|s| eps_{n-1}**-beta) - exp(-|s| eps_n**-beta)``."""
    return float(np.exp(lattice_log_pmf(dist, n)))


def lattice_log_cdf(dist, epsilon):
    n = lattice_support_index(dist, epsilon)
    return -float(dist._a(n - 1))


def lattice_cdf(dist, epsilon):
    return float(np.exp(lattice_log_cdf(dist, epsilon)))


def lattice_sample(dist, n, seed=None, n_max=N_MAX, logger=None):
    """Draw ``n`` values from the lattice distribution by inversion.

    With ``E`` standard exponential, ``X = q**N`` for the largest ``N``
    with ``|s| q**(-beta (N-1)) <= E``.  Indices above ``n_max`` are
    clamped to ``n_max``.
    """
    if int(n) < 1:
        raise DomainError("need n >= 1, got %r" % (n,))
    seed = SeedSpec() if seed is None else seed
    rng = seed.generator()
    e = rng.standard_exponential(int(n))
    with np.errstate(divide='ignore'):
        k = 1.0 + np.log(e / -dist.s) / (dist.beta * -np.log(dist.q))
    idx = np.floor(np.where(np.isfinite(k), k, 1.0))
    idx = np.maximum(idx, 1.0)
    clamped = int(np.count_nonzero(idx > n_max))
    if clamped and logger is not None:
        logger.warning("%d lattice draws clamped to index %d" % (
            clamped, n_max))
    idx = np.minimum(idx, n_max).astype(int)
    return dist.point(idx)


def lattice_log_laplace(dist, lam, rel_tol=1e-15, max_terms=MAX_TERMS,
                        logger=None):
    """Log of ``E(exp(-lambda X)) = sum_n exp(-lambda q**n) P(X = q**n)``.

    Terms are added until the remaining mass ``exp(-|s| q**(-beta N))``
    falls below ``rel_tol`` times the running sum, or ``max_terms`` terms
    have been added; the latter is logged as a warning.
    """
    if not lam >= 0:
        raise DomainError("lambda must be >= 0, got %r" % (lam,))
    if not rel_tol > 0:
        raise DomainError("rel_tol must be positive, got %r" % (rel_tol,))
    if int(max_terms) < 1:
        raise DomainError("max_terms must be >= 1, got %r" % (max_terms,))
    log_tol = np.log(rel_tol)
    terms = []
    running = -np.inf
    for n in range(1, int(max_terms) + 1):
        terms.append(-lam * dist.point(n) + lattice_log_pmf(dist, n))
        running = np.logaddexp(running, terms[-1])
        tail = -float(dist._a(n))
        if tail < log_tol + running:
            break
    else:
        if logger is not None:
            logger.warning("lattice Laplace series cut at %d terms with tail "
                           "mass exp(%g) against a sum of exp(%g)" % (
                               len(terms), tail, running))
    return log_sum_exp(terms)


def lattice_laplace(dist, lam, rel_tol=1e-15):
    return float(np.exp(lattice_log_laplace(dist, lam, rel_tol=rel_tol)))


def lattice_laplace_lower_bound(dist, lam, alpha):
    """Log of ``exp(-(1 + max(q, q**beta)) lambda**alpha |s|**(alpha/beta)) / 2``.

    A lower bound on the Laplace transform for large enough ``lambda``.
    """
    c = 1.0 + max(dist.q, dist.q ** dist.beta)
    return float(-np.log(2.0) - c * lam ** alpha *
                 (-dist.s) ** (alpha / dist.beta))


def lattice_theoretic_rates(dist, pair):
    """Exact upper/lower small-ball rates and the implied Laplace rates.

    The upper small-ball limit is ``s * liminf eps_n**beta/eps_{n-1}**beta
    = q**beta s``.  The band for the lower Laplace limit intersects the
    explicit estimate ``>= -(1 + max(q, q**beta)) |s|**(1-alpha)`` with
    the general upper edge ``-|s|**(1-alpha)``.
    """
    if abs(pair.beta - dist.beta) > 1e-12 * max(1.0, dist.beta):
        raise DomainError("pair.beta=%r differs from the distribution's "
                          "beta=%r" % (pair.beta, dist.beta))
    s_lower = dist.s
    s_upper = dist.q ** dist.beta * dist.s
    mag = (-dist.s) ** (1.0 - pair.alpha)
    band = RateBand(-(1.0 + max(dist.q, dist.q ** dist.beta)) * mag, -mag)
    return Bunch.Bunch(s_lower=s_lower, s_upper=s_upper,
                       r_upper=r_from_s(s_upper, pair),
                       r_lower_band=band)
