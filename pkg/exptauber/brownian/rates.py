"""
Large-gamma and small-eps exponents for ``X = int_0^t B_s**2 ds``.

* ``(1/gamma) log E_x[exp(-gamma**2 X / 2); B_{t_i} in A_i]`` tends to
  ``-(t/2 + x**2/2 + inf(z_1**2 + ... + z_{n-1}**2 + z_n**2/2))``.
* ``eps log P(B_{t_i} in A_i | X <= eps)`` tends to
  ``-(t + m)**2/8 + t**2/8`` with ``m`` the infimum of
  ``2 z_1**2 + ... + 2 z_{n-1}**2 + z_n**2`` (all weights 2 when
  ``t_n < t``).

Infima are taken over interval boxes; for boxes with nonempty interior
they coincide with the Lebesgue essential infimum.  Point boxes get the
pointwise value.
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..core import ExponentPair, s_from_r
from ..exceptions import DomainError
from .grid import close_chain

__all__ = ['essinf_quadratic', 'bsqr_asymptotic_rate', 'condbb_rate',
           'rate_I_finite', 'rate_I_path', 'l2_laplace_rate',
           'l2_smallball_rate']


def essinf_quadratic(boxes, weights):
    """Minimize ``sum w_i z_i**2`` over the product of boxes.

    Returns
    -------
    value : float
    argmin : list of float
        The point of each box nearest to zero.
    """
    weights = [float(w) for w in weights]
    if len(weights) != len(boxes):
        raise DomainError("%d weights for %d boxes" % (len(weights),
                                                       len(boxes)))
    if any(w < 0 for w in weights):
        raise DomainError("weights must be >= 0")
    argmin = [box.nearest_to_zero() for box in boxes]
    value = sum(w * z * z for w, z in zip(weights, argmin))
    return float(value), argmin


def _tail_weights(n, ends_at_horizon):
    weights = [2.0] * n
    if ends_at_horizon:
        weights[-1] = 1.0
    return weights


def bsqr_asymptotic_rate(x0, grid, boxes):
    """Limit of ``(1/gamma) log`` of the kernel-chain functional."""
    grid, boxes = close_chain(grid, boxes)
    weights = [1.0] * (len(boxes) - 1) + [0.5]
    m, _ = essinf_quadratic(boxes, weights)
    return -(grid.horizon / 2.0 + x0 * x0 / 2.0 + m)


def condbb_rate(grid, boxes, horizon=None):
    """Conditional exponent ``lim eps log P(skeleton in boxes | X <= eps)``."""
    t = grid.horizon if horizon is None else float(horizon)
    if grid.times[-1] > t:
        raise DomainError("last time %r exceeds the horizon %r" % (
            grid.times[-1], t))
    weights = _tail_weights(len(grid), grid.times[-1] == t)
    m, _ = essinf_quadratic(boxes, weights)
    return -(t + m) ** 2 / 8.0 + t * t / 8.0


def rate_I_finite(z, grid, horizon=None):
    """Finite-dimensional rate function of the conditioned skeleton."""
    t = grid.horizon if horizon is None else float(horizon)
    z = np.asarray(z, dtype=float).ravel()
    if z.size != len(grid):
        raise DomainError("%d values for %d times" % (z.size, len(grid)))
    weights = np.array(_tail_weights(len(grid), grid.times[-1] == t))
    total = t + float(np.dot(weights, z * z))
    return total * total / 8.0 - t * t / 8.0


def rate_I_path(skeleton, horizon):
    """Rate of a path known on finitely many times.

    ``skeleton`` is a sequence of ``(time, value)`` with times in
    ``(0, t]``; the value at ``t`` counts once and defaults to 0, every
    earlier value counts twice.  This is the supremum over subsets of the
    given times, hence a lower bound on the path rate.
    """
    t = float(horizon)
    inner = 0.0
    final = 0.0
    for time, value in skeleton:
        if not 0 < time <= t:
            raise DomainError("skeleton time %r outside (0, %r]" % (time, t))
        if time == t:
            final = float(value) ** 2
        else:
            inner += 2.0 * float(value) ** 2
    total = t + inner + final
    return total * total / 8.0 - t * t / 8.0


def l2_laplace_rate(horizon):
    """``lim lambda**-1/2 log E(exp(-lambda X)) = -t/sqrt(2)``."""
    return -float(horizon) / np.sqrt(2.0)


def l2_smallball_rate(horizon):
    """``lim eps log P(X <= eps) = -t**2/8``, by conversion of the
    Laplace rate."""
    return s_from_r(l2_laplace_rate(horizon), ExponentPair.from_alpha(0.5))
