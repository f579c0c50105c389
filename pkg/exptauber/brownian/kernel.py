"""
Damped Brownian transition kernel and the kernel-chain Laplace functional

    E_x[ exp(-gamma**2/2 int_0^t B_s**2 ds) 1_{A_1}(B_{t_1}) ... 1_{A_n}(B_{t_n}) ]

evaluated by backward recursion of one-dimensional quadratures.
"""
from __future__ import absolute_import, division, print_function

import numpy as np

from ..numerics import QuadratureConfig, integrate_1d
from .grid import KernelParams, close_chain

__all__ = ['log_sinh', 'log_cosh', 'log_kernel', 'chain_log_functional',
           'l2_log_laplace']

_LOG2 = np.log(2.0)
_LOG_2PI = np.log(2.0 * np.pi)


def log_sinh(u):
    u = np.asarray(u, dtype=float)
    return u - _LOG2 + np.log(-np.expm1(-2.0 * u))


def log_cosh(u):
    u = np.abs(np.asarray(u, dtype=float))
    small = u < 1.0
    # cosh(u) - 1 = 2 sinh(u/2)**2 keeps the small-u values exact
    near = np.log1p(2.0 * np.sinh(0.5 * np.where(small, u, 0.0)) ** 2)
    return np.where(small, near, u - _LOG2 + np.log1p(np.exp(-2.0 * u)))


def log_kernel(x, z, params):
    """Log of the damped kernel ``phi(x; t, z)``.

    ``phi(x; t, z) dz = E_x[exp(-gamma**2/2 int_0^t B**2); B_t in dz]``,
    a Gaussian in ``z`` with mean ``x / cosh(t gamma)`` and variance
    ``tanh(t gamma) / gamma``.  Finite for ``t gamma`` up to several
    hundred.
    """
    g = params.gamma
    u = params.t * g
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    lsh = log_sinh(u)
    coth = 1.0 / np.tanh(u)
    csch = np.exp(-lsh)
    quad_form = (x * x + z * z) * coth - 2.0 * x * z * csch
    return 0.5 * np.log(g) - 0.5 * _LOG_2PI - 0.5 * lsh - 0.5 * g * quad_form


def _kernel_mean(z, params):
    return z * np.exp(-log_cosh(params.t * params.gamma))


def _kernel_sd(params):
    return np.sqrt(np.tanh(params.t * params.gamma) / params.gamma)


def chain_log_functional(x0, grid, boxes, gamma, quad=None, logger=None):
    """Log of the kernel-chain functional started at ``x0``.

    Parameters
    ----------
    x0 : float
        Starting point of the Brownian motion.
    grid : `TimeGrid`
        When the last time is before the horizon, ``(horizon, R)`` is
        appended, which leaves the value unchanged.
    boxes : `BoxFamily`
        One interval per time.
    gamma : float
        Damping, ``lambda = gamma**2 / 2``.
    quad : `QuadratureConfig`

    Returns
    -------
    float
        ``log h_0(x0)`` where ``h_n = 1`` and
        ``h_{k-1}(z) = int_{A_k} phi(z; t_k - t_{k-1}, y) h_k(y) dy``.
    """
    quad = QuadratureConfig() if quad is None else quad
    grid, boxes = close_chain(grid, boxes)
    params = [KernelParams(gamma, dt) for dt in grid.steps]
    n = len(params)

    # every box is cut this far around the points the mass can concentrate
    # on: the kernel mean, zero and the later boxes' points nearest zero
    sd = max(_kernel_sd(p) for p in params)
    half_width = np.sqrt(-2.0 * quad.truncation_log_tol) * sd * np.sqrt(n)

    def log_h(k, z):
        if k == n:
            return 0.0
        box = boxes[k]
        if box.lower == box.upper:
            return -np.inf
        mean = float(_kernel_mean(z, params[k]))
        anchors = [mean, 0.0] + [later.nearest_to_zero()
                                 for later in boxes[k + 1:]]
        anchors = [box.clip(p) for p in anchors]
        lo = max(box.lower, min(anchors) - half_width)
        hi = min(box.upper, max(anchors) + half_width)
        points = [p for p in anchors if lo < p < hi]

        if k + 1 == n:
            def integrand(y):
                return log_kernel(z, y, params[k])
        else:
            def integrand(y):
                tail = np.array([log_h(k + 1, yi) for yi in np.ravel(y)])
                return log_kernel(z, y, params[k]) + tail.reshape(np.shape(y))

        return integrate_1d(integrand, lo, hi, quad, points=points,
                            logger=logger)

    value = log_h(0, float(x0))
    if logger is not None:
        logger.debug("chain functional x0=%g gamma=%g n=%d -> %.17g" % (
            x0, gamma, n, value))
    return value


def l2_log_laplace(lam, horizon):
    """``log E(exp(-lambda int_0^t B**2 ds)) = -log cosh(t sqrt(2 lambda)) / 2``."""
    return float(-0.5 * log_cosh(horizon * np.sqrt(2.0 * lam)))
