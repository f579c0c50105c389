"""
Exponent-pair algebra and the rate conversions between the Laplace
transform at infinity and small-ball probabilities at zero.

Laplace rates ``r`` are limits of ``lambda**-alpha * log E(exp(-lambda X))``
and small-ball rates ``s`` limits of ``eps**beta * log P(X <= eps)``; for
conjugate exponents ``1/alpha = 1/beta + 1`` they satisfy
``|alpha r|**(1/alpha) == |beta s|**(1/beta)``.  Powers of rates are
always taken as ``exp(p * log|x|)`` with the zero rate handled
separately.
"""
from __future__ import absolute_import, division, print_function

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .numerics import minimize_power_sum

__all__ = ['ExponentPair', 'RateBand', 'pair_from_alpha', 'pair_from_beta',
           'entropy_H', 'check_rate', 'identity_residual', 's_from_r',
           'r_from_s', 'slower_band_from_rlower', 'rlower_band_from_slower',
           'markov_lambda', 'markov_smallball_rate', 'laplace_principle_rate',
           'sandwich_epsilon']

PAIR_TOL = 1e-12


@dataclass(frozen=True)
class ExponentPair:
    """Conjugate exponents with ``1/alpha == 1/beta + 1``."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie in (0, 1), got %r" % (self.alpha,))
        if not self.beta > 0:
            raise DomainError("beta must be positive, got %r" % (self.beta,))
        if abs(1.0 / self.alpha - (1.0 / self.beta + 1.0)) > PAIR_TOL * \
                max(1.0, 1.0 / self.alpha):
            raise DomainError("alpha=%r and beta=%r are not conjugate" % (
                self.alpha, self.beta))

    @classmethod
    def from_alpha(cls, alpha):
        if not 0 < alpha < 1:
            raise DomainError("alpha must lie in (0, 1), got %r" % (alpha,))
        return cls(float(alpha), float(alpha / (1.0 - alpha)))

    @classmethod
    def from_beta(cls, beta):
        if not beta > 0:
            raise DomainError("beta must be positive, got %r" % (beta,))
        return cls(float(beta / (1.0 + beta)), float(beta))


def pair_from_alpha(alpha):
    return ExponentPair.from_alpha(alpha)


def pair_from_beta(beta):
    return ExponentPair.from_beta(beta)


def check_rate(value, name='rate'):
    """Validate an exponential rate: a finite real <= 0."""
    value = float(value)
    if not np.isfinite(value):
        raise DomainError("%s must be finite, got %r" % (name, value))
    if value > 0:
        raise DomainError("%s must be <= 0, got %r" % (name, value))
    return value


@dataclass(frozen=True)
class RateBand:
    """Closed interval ``[lower, upper]`` of admissible rates, ``<= 0``."""

    lower: float
    upper: float

    def __post_init__(self):
        check_rate(self.lower, 'lower')
        check_rate(self.upper, 'upper')
        if self.lower > self.upper:
            raise DomainError("band lower %r exceeds upper %r" % (
                self.lower, self.upper))

    @property
    def width(self):
        return self.upper - self.lower

    def widened(self, fraction):
        """Move each edge outward by ``fraction`` of its magnitude; the
        upper edge is capped at 0."""
        return RateBand(self.lower - fraction * abs(self.lower),
                        min(0.0, self.upper + fraction * abs(self.upper)))

    def contains(self, value, rel_tol=0.0):
        band = self.widened(rel_tol) if rel_tol else self
        return band.lower <= value <= band.upper

    def as_tuple(self):
        return (self.lower, self.upper)


def _abs_pow(x, p):
    """``|x|**p`` through logarithms; ``0**p == 0`` for ``p > 0``."""
    x = abs(float(x))
    if x == 0.0:
        return 0.0
    return float(np.exp(p * np.log(x)))


def entropy_H(alpha):
    """Binary entropy ``-a log a - (1-a) log(1-a)`` for ``0 < a < 1``."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1), got %r" % (alpha,))
    return float(-alpha * np.log(alpha) - (1.0 - alpha) * np.log1p(-alpha))


def s_from_r(r, pair):
    """Small-ball rate matching the Laplace rate ``r``."""
    r = check_rate(r, 'r')
    return -_abs_pow(pair.alpha * r, pair.beta / pair.alpha) / pair.beta


def r_from_s(s, pair):
    """Laplace rate matching the small-ball rate ``s``; inverse of
    :func:`s_from_r`."""
    s = check_rate(s, 's')
    return -_abs_pow(pair.beta * s, pair.alpha / pair.beta) / pair.alpha


def identity_residual(r, s, pair):
    """Relative residual of ``|alpha r|**(1/alpha) == |beta s|**(1/beta)``."""
    left = _abs_pow(pair.alpha * r, 1.0 / pair.alpha)
    right = _abs_pow(pair.beta * s, 1.0 / pair.beta)
    scale = max(left, right)
    if scale == 0.0:
        return 0.0
    return abs(left - right) / scale


def slower_band_from_rlower(r_lower, pair):
    """Admissible lower small-ball limits for a given lower Laplace limit.

    The band runs from ``-|e**H alpha r|**(beta/alpha) / beta`` up to
    ``-|alpha r|**(beta/alpha) / beta``.
    """
    r_lower = check_rate(r_lower, 'r_lower')
    p = pair.beta / pair.alpha
    grow = np.exp(entropy_H(pair.alpha))
    lower = -_abs_pow(grow * pair.alpha * r_lower, p) / pair.beta
    upper = -_abs_pow(pair.alpha * r_lower, p) / pair.beta
    return RateBand(lower, upper)


def rlower_band_from_slower(s_lower, pair):
    """Admissible lower Laplace limits for a given lower small-ball limit:
    ``[-|beta s|**(1-alpha) / alpha, -|s|**(1-alpha)]``."""
    s_lower = check_rate(s_lower, 's_lower')
    p = 1.0 - pair.alpha
    return RateBand(-_abs_pow(pair.beta * s_lower, p) / pair.alpha,
                    -_abs_pow(s_lower, p))


def markov_lambda(r_upper, epsilon, pair):
    """The ``lambda`` at which the exponential Markov inequality
    ``P(X <= eps) <= exp(lambda eps) E(exp(-lambda X))`` gives the sharp
    small-ball exponent."""
    r_upper = check_rate(r_upper, 'r_upper')
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % (epsilon,))
    beta = pair.beta
    return _abs_pow(beta / (beta + 1.0) * r_upper, beta + 1.0) * \
        epsilon ** (-(beta + 1.0))


def markov_smallball_rate(r_upper, pair):
    """Upper bound on the upper small-ball limit from the Markov step:
    ``-beta**beta / (beta+1)**(beta+1) * |r|**(beta+1)``."""
    r_upper = check_rate(r_upper, 'r_upper')
    beta = pair.beta
    log_c = beta * np.log(beta) - (beta + 1.0) * np.log(beta + 1.0)
    if r_upper == 0.0:
        return 0.0
    return -float(np.exp(log_c + (beta + 1.0) * np.log(-r_upper)))


def laplace_principle_rate(s_upper, pair):
    """Laplace rate bound ``-min_v (|s| v**-beta + v)`` for a small-ball
    rate ``s``."""
    s_upper = check_rate(s_upper, 's_upper')
    if s_upper == 0.0:
        return 0.0
    _, value = minimize_power_sum(-s_upper, pair.beta)
    return -value


def sandwich_epsilon(lam, s_lower, pair):
    """``eps`` solving ``lambda**-alpha == |s|**-alpha * eps**beta``."""
    s_lower = check_rate(s_lower, 's_lower')
    if not lam > 0 or s_lower == 0.0:
        raise DomainError("need lambda > 0 and s_lower < 0")
    return _abs_pow(-s_lower / lam, pair.alpha / pair.beta)
