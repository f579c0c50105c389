"""
Shared numerical machinery: log-space sums and quadrature, the power-sum
minimization behind the Laplace principle, and reproducible random
streams.

Every integrand and density is handled through its logarithm.  At the
parameters of interest (damping 200, lattice points ``q**30``) the plain
values overflow or underflow double precision.
"""
from __future__ import absolute_import, division, print_function

from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .exceptions import DomainError, QuadratureError

__all__ = ['QuadratureConfig', 'SeedSpec', 'log_sum_exp',
           'minimize_power_sum', 'minimize_power_sum_golden',
           'integrate_1d']

# 15-point Kronrod nodes on [0, 1] (descending), their weights and the
# embedded 7-point Gauss weights (nonzero on every other node)
_XGK = np.array([0.991455371120812639206854697526329,
                 0.949107912342758524526189684047851,
                 0.864864423359769072789712788640926,
                 0.741531185599394439863864773280788,
                 0.586087235467691130294144845693013,
                 0.405845151377397166906606412076961,
                 0.207784955007898467600689403773245,
                 0.000000000000000000000000000000000])
_WGK = np.array([0.022935322010529224963732008058970,
                 0.063092092629978553290700663189204,
                 0.104790010322250183839876322541518,
                 0.140653259715525918745189590510238,
                 0.169004726639267902826583426598550,
                 0.190350578064785409913256402421014,
                 0.204432940075298892414161999234649,
                 0.209482141084727828012999174891714])
_WG = np.array([0.0,
                0.129484966168869693270611432679082,
                0.0,
                0.279705391489276667901467771423780,
                0.0,
                0.381830050505118944950369775488975,
                0.0,
                0.417959183673469387755102040816327])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
with np.errstate(divide='ignore'):
    _LOG_WK = np.log(np.concatenate([_WGK[:-1], _WGK[::-1]]))
    _LOG_WG = np.log(np.concatenate([_WG[:-1], _WG[::-1]]))

# a panel end more than this far (in log) above every node of the panel
# marks mass the rule did not see
EDGE_LOG_MARGIN = np.log(2.0)


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for :func:`integrate_1d`.

    Node log-values more than ``-truncation_log_tol`` below the running
    maximum are dropped from the panel sums.
    """

    abs_tol: float = 1e-300
    rel_tol: float = 1e-10
    max_depth: int = 50
    truncation_log_tol: float = -40.0
    initial_panels: int = 4
    max_panels: int = 4000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive, got "
                              "abs_tol=%r rel_tol=%r" % (self.abs_tol,
                                                         self.rel_tol))
        if self.max_depth < 1 or self.initial_panels < 1:
            raise DomainError("max_depth and initial_panels must be >= 1")
        if not self.truncation_log_tol < 0:
            raise DomainError("truncation_log_tol must be negative, got %r" % (
                self.truncation_log_tol))

    @classmethod
    def from_settings(cls, settings):
        return cls(abs_tol=settings.get('quad_abs_tol'),
                   rel_tol=settings.get('quad_rel_tol'),
                   max_depth=settings.get('quad_max_depth'),
                   truncation_log_tol=settings.get('truncation_log_tol'),
                   initial_panels=settings.get('quad_initial_panels'))


@dataclass(frozen=True)
class SeedSpec:
    """Address of one reproducible random stream.

    The same ``(root_seed, stream_index, subkeys)`` always gives the same
    sequence; different stream indices give independent streams, and
    ``child(k)`` nests an independent stream below this one.
    Work split into batches draws batch ``k`` from ``generator(k)``, so
    results do not depend on how many threads process the batches.
    """

    root_seed: int = 0
    stream_index: int = 0
    subkeys: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'subkeys',
                           tuple(int(k) for k in self.subkeys))
        if not 0 <= int(self.root_seed) < 2 ** 64:
            raise DomainError("root_seed must be a 64-bit unsigned integer, "
                              "got %r" % (self.root_seed,))
        if int(self.stream_index) < 0:
            raise DomainError("stream_index must be >= 0, got %r" % (
                self.stream_index,))
        if any(k < 0 for k in self.subkeys):
            raise DomainError("subkeys must be >= 0, got %r" % (self.subkeys,))

    def child(self, index):
        return SeedSpec(self.root_seed, self.stream_index,
                        self.subkeys + (int(index),))

    def generator(self, *subkeys):
        seq = np.random.SeedSequence(
            int(self.root_seed),
            spawn_key=(int(self.stream_index),) + self.subkeys +
            tuple(int(k) for k in subkeys))
        return np.random.Generator(np.random.PCG64(seq))


def log_sum_exp(values):
    """Return ``log(sum(exp(values)))`` without overflow or underflow."""
    values = np.asarray(values, dtype=float).ravel()
    if values.size == 0:
        raise DomainError("log_sum_exp of an empty sequence")
    with np.errstate(divide='ignore', invalid='ignore'):
        return float(special.logsumexp(values))


def _check_power_sum_args(c, beta):
    if not (c > 0 and beta > 0):
        raise DomainError("need c > 0 and beta > 0, got c=%r beta=%r" % (
            c, beta))


def minimize_power_sum(c, beta):
    """Minimize ``v -> c * v**-beta + v`` over ``v > 0``.

    Returns
    -------
    argmin, min_value : float
        ``(beta c)**(1/(beta+1))`` and
        ``c**(1/(beta+1)) * beta**(-beta/(beta+1)) * (1 + beta)``.
    """
    _check_power_sum_args(c, beta)
    p = 1.0 / (beta + 1.0)
    argmin = np.exp(p * np.log(beta * c))
    value = np.exp(p * np.log(c) - beta * p * np.log(beta)) * (1.0 + beta)
    return float(argmin), float(value)


def minimize_power_sum_golden(c, beta, tol=1e-12):
    """Golden-section search for the minimum of ``c * v**-beta + v``.

    The search runs over ``u = log v``, where the function is unimodal,
    and starts from a bracket grown out of ``(-1, 1)``.
    """
    _check_power_sum_args(c, beta)

    def g(u):
        return c * np.exp(-beta * u) + np.exp(u)

    res = optimize.minimize_scalar(g, bracket=(-1.0, 1.0), method='golden',
                                   tol=tol)
    return float(np.exp(res.x)), float(res.fun)


def _evaluate(log_integrand, x):
    try:
        vals = np.asarray(log_integrand(x), dtype=float)
    except TypeError:
        vals = np.vectorize(log_integrand, otypes=[float])(x)
    vals = np.broadcast_to(vals, x.shape).astype(float)
    if np.any(np.isnan(vals)) or np.any(vals == np.inf):
        raise DomainError("log-integrand returned NaN or +inf")
    return vals


def _panel_nodes(a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    return mid[:, None] + half[:, None] * _NODES[None, :], half


def _finite_limits(log_integrand, lower, upper, config, anchor):
    """Cut infinite endpoints where the integrand has dropped below the
    truncation level, scanning outward with doubling steps."""
    if np.isfinite(lower) and np.isfinite(upper):
        return lower, upper

    start = anchor
    if np.isfinite(lower):
        start = max(start, lower)
    if np.isfinite(upper):
        start = min(start, upper)
    running = float(_evaluate(log_integrand, np.array([start]))[0])

    def scan(direction):
        nonlocal running
        for k in range(64):
            x = start + direction * 2.0 ** (k - 4)
            val = float(_evaluate(log_integrand, np.array([x]))[0])
            running = max(running, val)
            if val < running + config.truncation_log_tol:
                return x
        raise QuadratureError("integrand does not decay towards %s" % (
            '+inf' if direction > 0 else '-inf'))

    if not np.isfinite(upper):
        upper = scan(1.0)
    if not np.isfinite(lower):
        lower = scan(-1.0)
    return lower, upper


def integrate_1d(log_integrand, lower, upper, config=None, points=None,
                 logger=None):
    """Adaptive Gauss-Kronrod quadrature carried out in log space.

    Parameters
    ----------
    log_integrand : callable
        Maps an array of abscissae to the log of the integrand (``-inf``
        where the integrand vanishes).
    lower, upper : float
        Integration limits, ``lower < upper``; either may be infinite.
    config : `QuadratureConfig`
    points : sequence of float, optional
        Break points used for the initial panel split, e.g. the location
        of a sharp peak.

    Returns
    -------
    float
        ``log`` of the integral.

    Notes
    -----
    The integrand is also evaluated at every panel end.  A panel whose
    end value stands more than ``EDGE_LOG_MARGIN`` above all of its
    nodes has not resolved what happens there; its width times the end
    value is charged to the error estimate until bisection resolves it.
    """
    config = QuadratureConfig() if config is None else config
    if not lower < upper:
        raise DomainError("need lower < upper, got [%r, %r]" % (lower, upper))

    anchor = 0.0
    if points is not None and len(points) > 0:
        anchor = float(np.mean(points))
    lower, upper = _finite_limits(log_integrand, float(lower), float(upper),
                                  config, anchor)

    edges = np.linspace(lower, upper, config.initial_panels + 1)
    if points is not None:
        inner = [p for p in points if lower < p < upper]
        edges = np.unique(np.concatenate([edges, inner]))
    edge_vals = _evaluate(log_integrand, edges)
    a = edges[:-1]
    b = edges[1:]
    va = edge_vals[:-1]
    vb = edge_vals[1:]
    depth = np.zeros(len(a), dtype=int)
    x, half = _panel_nodes(a, b)
    vals = _evaluate(log_integrand, x)

    log_abs_tol = np.log(config.abs_tol)
    log_rel_tol = np.log(config.rel_tol)

    while True:
        ends = np.maximum(va, vb)
        top = max(np.max(vals), np.max(ends))
        if top == -np.inf:
            return -np.inf

        kept = np.where(vals >= top + config.truncation_log_tol, vals, -np.inf)
        log_half = np.log(0.5 * (b - a))
        with np.errstate(divide='ignore', invalid='ignore'):
            lk = special.logsumexp(kept + _LOG_WK[None, :], axis=1) + log_half
            lg = special.logsumexp(kept + _LOG_WG[None, :], axis=1) + log_half
            lerr = lk + np.log(np.abs(np.expm1(lg - lk)))
        lerr = np.where(np.isfinite(lk), lerr, -np.inf)
        lerr = np.where(np.isnan(lerr), -np.inf, lerr)

        unseen = ends > np.max(vals, axis=1) + EDGE_LOG_MARGIN
        lerr = np.where(unseen, np.logaddexp(lerr, np.log(b - a) + ends),
                        lerr)

        total = float(special.logsumexp(lk))
        err = float(special.logsumexp(lerr)) if np.any(np.isfinite(lerr)) \
            else -np.inf
        if err <= max(log_abs_tol, log_rel_tol + total):
            return total

        i = int(np.argmax(lerr))
        if depth[i] >= config.max_depth or len(a) >= config.max_panels:
            if logger is not None:
                logger.error("quadrature on [%g, %g] stopped at %d panels, "
                             "log error %g vs log total %g" % (
                                 lower, upper, len(a), err, total))
            raise QuadratureError(
                "no convergence on [%g, %g]: depth %d, %d panels" % (
                    lower, upper, depth[i], len(a)))

        mid = 0.5 * (a[i] + b[i])
        v_mid = float(_evaluate(log_integrand, np.array([mid]))[0])
        new_a = np.array([a[i], mid])
        new_b = np.array([mid, b[i]])
        new_x, _ = _panel_nodes(new_a, new_b)
        new_vals = _evaluate(log_integrand, new_x)

        a = np.concatenate([np.delete(a, i), new_a])
        b = np.concatenate([np.delete(b, i), new_b])
        va = np.concatenate([np.delete(va, i), [va[i], v_mid]])
        vb = np.concatenate([np.delete(vb, i), [v_mid, vb[i]]])
        depth = np.concatenate([np.delete(depth, i),
                                [depth[i] + 1, depth[i] + 1]])
        vals = np.concatenate([np.delete(vals, i, axis=0), new_vals])
