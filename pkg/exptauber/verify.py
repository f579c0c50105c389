"""
Verification suites.  Every check records what was expected, what was
observed and the tolerance used; a suite passes when all checks pass.
"""
from __future__ import absolute_import, division, print_function

import time
from dataclasses import dataclass, field

import numpy as np

from . import core, estimators, lattice, numerics
from .brownian import (Box, BoxFamily, KernelParams, PathSampleConfig,
                       TimeGrid, bsqr_asymptotic_rate, chain_log_functional,
                       condbb_rate, essinf_quadratic, l2_log_laplace,
                       l2_sampler, l2_smallball_rate, log_kernel,
                       mc_conditional, mc_smallball, rate_I_finite)
from .exceptions import DomainError
from .utils import null_logger

__all__ = ['Check', 'VerifyReport', 'SUITES', 'run_suite']


@dataclass
class Check:

    name: str
    expected: object
    observed: object
    tolerance: float
    passed: bool

    def as_dict(self):
        return dict(name=self.name, expected=self.expected,
                    observed=self.observed, tolerance=self.tolerance,
                    passed=bool(self.passed))


@dataclass
class VerifyReport:

    suite_name: str
    seed: numerics.SeedSpec
    config: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return dict(suite_name=self.suite_name,
                    seed=dict(root_seed=self.seed.root_seed,
                              stream_index=self.seed.stream_index),
                    config=self.config,
                    checks=[c.as_dict() for c in self.checks],
                    passed=self.passed,
                    wall_time=self.wall_time)


class _Recorder(object):

    def __init__(self, report, prefix, logger):
        self.report = report
        self.prefix = prefix
        self.logger = logger

    def _add(self, name, expected, observed, tolerance, passed):
        check = Check(name='%s.%s' % (self.prefix, name), expected=expected,
                      observed=observed, tolerance=tolerance,
                      passed=bool(passed))
        self.report.checks.append(check)
        self.logger.info("%-45s %s observed=%r expected=%r tol=%g" % (
            check.name, 'ok  ' if check.passed else 'FAIL', observed,
            expected, tolerance))

    def close(self, name, expected, observed, tolerance):
        self._add(name, expected, observed, tolerance,
                  abs(observed - expected) <= tolerance)

    def at_most(self, name, observed, limit):
        self._add(name, limit, observed, limit, observed <= limit)

    def within(self, name, observed, lower, upper):
        self._add(name, [lower, upper], observed, 0.0,
                  lower <= observed <= upper)

    def true(self, name, condition, observed=None):
        self._add(name, True, observed if observed is not None else
                  bool(condition), 0.0, condition)


def core_suite(rec, seed, options):
    rng = seed.generator()

    # conversion identity and round trip on random inputs
    alphas = rng.uniform(0.05, 0.95, 200)
    rates = -rng.uniform(0.01, 10.0, 200)
    residual = 0.0
    roundtrip = 0.0
    for a, s in zip(alphas, rates):
        pair = core.pair_from_alpha(a)
        r = core.r_from_s(s, pair)
        residual = max(residual, core.identity_residual(r, s, pair))
        roundtrip = max(roundtrip, abs(core.s_from_r(r, pair) - s) / abs(s))
    rec.at_most('identity_residual_max', residual, 1e-12)
    rec.at_most('roundtrip_max', roundtrip, 1e-12)

    half = core.pair_from_alpha(0.5)
    rec.close('s_from_r_alpha_half', -1.0, core.s_from_r(-2.0, half), 0.0)
    rec.close('r_from_s_alpha_half', -2.0, core.r_from_s(-1.0, half), 0.0)

    band = core.slower_band_from_rlower(-1.0, half)
    rec.close('band_alpha_half_lower', -1.0, band.lower, 1e-12)
    rec.close('band_alpha_half_upper', -0.25, band.upper, 1e-12)
    rec.close('entropy_half', float(np.log(2.0)), core.entropy_H(0.5), 1e-15)

    worst = 0.0
    ordered = True
    for a in np.arange(1, 10) / 10.0:
        pair = core.pair_from_alpha(a)
        s_low = -0.7
        rband = core.rlower_band_from_slower(s_low, pair)
        ordered = ordered and rband.lower <= rband.upper
        from_upper = core.slower_band_from_rlower(rband.upper, pair).lower
        from_lower = core.slower_band_from_rlower(rband.lower, pair).upper
        worst = max(worst, abs(from_upper - s_low), abs(from_lower - s_low))
    rec.at_most('band_inversion_max', worst, 1e-12)
    rec.true('band_ordered', ordered)

    worst = 0.0
    for c, beta in zip(rng.uniform(0.01, 10.0, 100), rng.uniform(0.1, 5.0, 100)):
        _, closed = numerics.minimize_power_sum(c, beta)
        _, golden = numerics.minimize_power_sum_golden(c, beta)
        worst = max(worst, abs(closed - golden) / closed)
    rec.at_most('power_sum_golden_max', worst, 1e-9)

    worst = 0.0
    for a, s in zip(alphas[:50], rates[:50]):
        pair = core.pair_from_alpha(a)
        worst = max(worst,
                    abs(core.laplace_principle_rate(s, pair) -
                        core.r_from_s(s, pair)) / abs(core.r_from_s(s, pair)),
                    abs(core.markov_smallball_rate(core.r_from_s(s, pair),
                                                   pair) - s) / abs(s))
    rec.at_most('proof_bounds_match_conversion', worst, 1e-10)


def lattice_suite(rec, seed, options):
    dist = lattice.LatticeDistribution(q=0.5, s=-1.0, beta=1.0)
    pair = core.pair_from_beta(dist.beta)

    on_point = []
    below = []
    for n in range(2, 21):
        eps = dist.q ** n
        on_point.append(eps ** dist.beta * lattice.lattice_log_cdf(dist, eps))
        eps = dist.q ** n * (1.0 - 1e-9)
        below.append(eps ** dist.beta * lattice.lattice_log_cdf(dist, eps))
    rec.at_most('oscillation_on_lattice',
                float(np.max(np.abs(np.array(on_point) + 0.5))), 1e-12)
    rec.at_most('oscillation_below_lattice',
                float(np.max(np.abs(np.array(below) + 1.0))), 1e-8)

    draws = dist.sample(10 ** 6, seed.child(1))
    points = dist.q ** np.arange(1, 40)
    empirical = np.array([np.mean(draws <= p) for p in points])
    analytic = np.array([lattice.lattice_cdf(dist, p) for p in points])
    rec.at_most('sample_kolmogorov_distance',
                float(np.max(np.abs(empirical - analytic))), 0.003)

    lams = estimators.geometric_grid(1e2, 1e6, 64)
    grid = estimators.TailGrid.from_log_values(
        lams, [lattice.lattice_log_laplace(dist, lam) for lam in lams])
    est = estimators.laplace_rate_window(grid, pair.alpha, 0.5)
    theory = lattice.lattice_theoretic_rates(dist, pair)
    rec.close('laplace_window_sup', theory.r_upper, est.window_sup,
              0.05 * abs(theory.r_upper))
    wide = theory.r_lower_band.widened(0.05)
    rec.within('laplace_window_inf', est.window_inf, wide.lower, wide.upper)

    lam_grid = estimators.geometric_grid(1.0, 1e4, 20)
    eps_grid = estimators.geometric_grid(dist.q ** 20, dist.q, 20)
    log_laplace = dict((lam, lattice.lattice_log_laplace(dist, lam))
                       for lam in lam_grid)
    chernoff_violations = 0
    sandwich_violations = 0
    for eps in eps_grid:
        log_cdf = lattice.lattice_log_cdf(dist, eps)
        bound = estimators.chernoff_log_bound(log_laplace.get, eps, lam_grid)
        chernoff_violations += int(log_cdf > bound + 1e-12 * abs(bound))
        for lam in lam_grid:
            upper = np.logaddexp(log_cdf, -lam * eps)
            sandwich_violations += int(log_laplace[lam] > upper + 1e-12)
    rec.close('chernoff_violations', 0, chernoff_violations, 0)
    rec.close('sandwich_violations', 0, sandwich_violations, 0)

    worst = 0.0
    for n in range(1, 51):
        partial = sum(lattice.lattice_pmf(dist, k) for k in range(1, n + 1))
        worst = max(worst, abs(partial - (1.0 - np.exp(-(-dist.s) *
                                                        dist.q ** (-n)))))
    rec.at_most('telescoping_max', worst, 1e-13)


def brownian_suite(rec, seed, options):
    quad = options['quad']
    threads = options['threads']
    batch = options['batch_size']

    for gamma in (1.0, 5.0, 20.0):
        grid = TimeGrid(1.0, (1.0,))
        value = chain_log_functional(0.0, grid, BoxFamily.everything(1), gamma,
                                     quad)
        rec.close('chain_exact_gamma_%g' % gamma,
                  l2_log_laplace(gamma ** 2 / 2.0, 1.0), value, 1e-6)

    worst = 0.0
    for gamma, t1, t2, x, z in ((1.0, 0.5, 0.5, 0.3, -0.2),
                                (5.0, 0.3, 0.7, 0.0, 0.4),
                                (20.0, 0.25, 0.5, -0.1, 0.1)):
        p1 = KernelParams(gamma, t1)
        p2 = KernelParams(gamma, t2)
        joined = numerics.integrate_1d(
            lambda y: log_kernel(x, y, p1) + log_kernel(y, z, p2),
            -np.inf, np.inf, quad, points=[x, z])
        worst = max(worst, abs(joined - log_kernel(x, z,
                                                   KernelParams(gamma, t1 + t2))))
    rec.at_most('chapman_kolmogorov_max', worst, 1e-6)

    for k, gamma in enumerate((1.0, 2.0, 5.0)):
        lam = gamma ** 2 / 2.0
        sampler = l2_sampler(2000, 1.0, batch_size=batch, threads=threads)
        est, se = estimators.mc_laplace(sampler, lam, 200000,
                                        seed.child(10 + k))
        exact = float(np.exp(l2_log_laplace(lam, 1.0)))
        rec.close('mc_laplace_gamma_%g' % gamma, exact, est,
                  3.0 * se + 0.005 * exact)

    box = BoxFamily([Box(1.0, 2.0)])
    grid = TimeGrid(1.0, (1.0,))
    scaled = [chain_log_functional(0.0, grid, box, g, quad) / g
              for g in (25.0, 50.0, 100.0, 200.0)]
    target = bsqr_asymptotic_rate(0.0, grid, box)
    rec.true('bsqr_monotone', bool(np.all(np.diff(scaled) > 0) and
                                   scaled[-1] <= target + 1e-9), scaled)
    rec.close('bsqr_gamma_200', target, scaled[-1], 0.05 * abs(target))

    eps = 0.02
    t = 1.0
    config = PathSampleConfig(steps=500, n_paths=10 ** 6,
                              seed=seed.child(20), batch_size=batch,
                              threads=threads)
    hit = mc_smallball(eps, config, t)
    observed = eps * np.log(hit.p_hat) if hit.p_hat > 0 else -np.inf
    # known first-order prefactor 4 sqrt(eps) / (t sqrt(pi)) of the
    # small-ball probability shifts eps log P by eps log of it
    prefactor = abs(eps * np.log(4.0 * np.sqrt(eps) / (t * np.sqrt(np.pi))))
    expected = l2_smallball_rate(t)
    rec.close('smallball_exponent', expected, float(observed),
              0.15 * abs(expected) + prefactor)

    config = PathSampleConfig(steps=500, n_paths=200000,
                              seed=seed.child(21), batch_size=batch,
                              threads=threads)
    one = TimeGrid(1.0, (1.0,))
    whole = mc_conditional(one, BoxFamily.everything(1), 0.1, config)
    rec.close('conditional_everything', 1.0, whole.p_hat, 0.0)
    cond = BoxFamily([Box(0.5, 1.0)])
    coarse = mc_conditional(one, cond, 0.1, config)
    fine = mc_conditional(one, cond, 0.05, config)
    rec.true('conditional_decreasing',
             fine.p_hat <= coarse.p_hat + coarse.ci_halfwidth + fine.ci_halfwidth,
             [coarse.p_hat, fine.p_hat])

    rng = seed.child(30).generator()
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        horizon = float(rng.uniform(0.5, 2.0))
        times = np.sort(rng.uniform(0.05, 1.0, n)) * horizon
        if rng.random() < 0.5:
            times[-1] = horizon
        if np.any(np.diff(times) <= 0):
            continue
        grid = TimeGrid(horizon, tuple(times))
        z = rng.normal(0.0, 1.0, n)
        points = BoxFamily([Box(v, v) for v in z])
        worst = max(worst, abs(rate_I_finite(z, grid) +
                               condbb_rate(grid, points)))
    rec.at_most('rate_vs_condbb_point_boxes', worst, 1e-12)
    rec.close('rate_at_zero', 0.0,
              rate_I_finite([0.0, 0.0], TimeGrid(1.0, (0.5, 1.0))), 0.0)

    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 4))
        boxes = []
        for _ in range(n):
            a, b = np.sort(rng.uniform(-3.0, 3.0, 2))
            kind = rng.integers(0, 4)
            boxes.append(Box(a if kind in (0, 1) else -np.inf,
                             b if kind in (0, 2) else np.inf))
        weights = rng.uniform(0.0, 2.0, n)
        value, _ = essinf_quadratic(boxes, weights)
        worst = max(worst, abs(value - _brute_force_essinf(boxes, weights)))
    rec.at_most('essinf_brute_force', worst, 1e-9)


def _brute_force_essinf(boxes, weights, points=41):
    axes = []
    for box in boxes:
        lo = box.lower if np.isfinite(box.lower) else min(box.upper, 0.0) - 10.0
        hi = box.upper if np.isfinite(box.upper) else max(box.lower, 0.0) + 10.0
        axis = np.linspace(lo, hi, points)
        if lo <= 0.0 <= hi:
            axis = np.append(axis, 0.0)
        axes.append(axis)
    mesh = np.meshgrid(*axes, indexing='ij')
    total = sum(w * m * m for w, m in zip(weights, mesh))
    return float(np.min(total))


SUITES = dict(core=core_suite, lattice=lattice_suite, brownian=brownian_suite)
ORDER = ('core', 'lattice', 'brownian')


def run_suite(name, seed, options=None, logger=None):
    """Run one suite (or ``'all'``) and return a `VerifyReport`."""
    logger = null_logger() if logger is None else logger
    options = {} if options is None else dict(options)
    options.setdefault('quad', numerics.QuadratureConfig())
    options.setdefault('threads', 1)
    options.setdefault('batch_size', 2000)
    if name == 'all':
        names = ORDER
    elif name in SUITES:
        names = (name,)
    else:
        raise DomainError("unknown suite %r" % (name,))

    quad = options['quad']
    config = dict(suite=name, threads=options['threads'],
                  batch_size=options['batch_size'],
                  quad=dict(abs_tol=quad.abs_tol, rel_tol=quad.rel_tol,
                            max_depth=quad.max_depth,
                            truncation_log_tol=quad.truncation_log_tol,
                            initial_panels=quad.initial_panels))
    report = VerifyReport(suite_name=name, seed=seed, config=config)
    start = time.time()
    for k, suite in enumerate(names):
        logger.info("running suite '%s'" % (suite,))
        SUITES[suite](_Recorder(report, suite, logger), seed.child(k),
                      options)
    report.wall_time = time.time() - start
    logger.info("%d checks, %d failed" % (
        len(report.checks), sum(not c.passed for c in report.checks)))
    return report
