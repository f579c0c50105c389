"""
Command-line front end.

    exptauber convert --alpha 0.5 --r -2
    exptauber example --q 0.5 --s -1 --beta 1 --emit pmf --n 3
    exptauber brownian rate --t 1 --times 1 --boxes 1:2
    exptauber verify --suite all --seed 42 --out report.json

Exit status: 0 success, 1 failed verification, 2 usage, 3 numerical
domain, 4 degenerate Monte Carlo conditioning, 5 I/O.
"""
from __future__ import absolute_import, division, print_function

import argparse
import io
import sys

import numpy as np
from ginga.misc import log

from . import core, estimators, lattice, verify
from .brownian import (BoxFamily, PathSampleConfig, TimeGrid,
                       bsqr_asymptotic_rate, chain_log_functional,
                       condbb_rate, l2_log_laplace, l2_smallball_rate,
                       mc_conditional, mc_smallball)
from .exceptions import (DegenerateConditioningError, DomainError,
                         TauberianError, VerificationFailure)
from .numerics import QuadratureConfig, SeedSpec
from .utils import dumps, get_logger, get_settings, parse_float_list, \
    write_table
from .version import __version__

__all__ = ['main', 'make_parser']

EXIT_IO = 5


def float_list(text):
    """argparse type for comma-separated numbers."""
    try:
        return parse_float_list(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _common_options():
    parent = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    parent.add_argument("--format", dest="fmt", choices=('csv', 'json'),
                        default=None,
                        help="Output format (default depends on command)")
    parent.add_argument("--seed", dest="seed", type=int, default=None,
                        help="Root seed of all random streams")
    parent.add_argument("--threads", dest="threads", type=int, default=None,
                        help="Worker threads for Monte Carlo")
    parent.add_argument("--config", dest="config", metavar="FILE",
                        default=None, help="Settings file to load")
    log.addlogopts(parent)
    return parent


def make_parser():
    parent = _common_options()
    parser = argparse.ArgumentParser(
        prog='exptauber', allow_abbrev=False,
        description="Exponential Tauberian relations between Laplace "
        "transforms and small-ball probabilities")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("convert", parents=[parent], allow_abbrev=False,
                       help="Convert between Laplace and small-ball rates")
    p.add_argument("--alpha", type=float, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--r", type=float, help="Laplace rate")
    which.add_argument("--s", type=float, help="Small-ball rate")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("example", parents=[parent], allow_abbrev=False,
                       help="Tables for the geometric lattice distribution")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--emit", choices=('pmf', 'cdf', 'laplace', 'rates'),
                   default='pmf')
    p.add_argument("--n", type=int, default=20,
                   help="Lattice points for pmf, and depth of the default "
                   "eps grid")
    p.add_argument("--epsilon", type=float_list, default=None,
                   help="Comma-separated eps values for --emit cdf")
    p.add_argument("--lambda", dest="lam", type=float_list, default=None,
                   help="Comma-separated lambda values for --emit laplace")
    p.add_argument("--lambda-min", dest="lam_min", type=float, default=1e2)
    p.add_argument("--lambda-max", dest="lam_max", type=float, default=1e6)
    p.add_argument("--points", type=int, default=64,
                   help="Points of the default geometric grids")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("brownian", allow_abbrev=False,
                       help="Squared-L2 functional of Brownian motion")
    bsub = p.add_subparsers(dest="brownian_command", metavar="SUBCOMMAND")
    bsub.required = True
    for name, func, text in (
            ('laplace', cmd_brownian_laplace, "Exact Laplace transform"),
            ('chain', cmd_brownian_chain, "Kernel-chain functional"),
            ('rate', cmd_brownian_rate, "Asymptotic exponents"),
            ('mc', cmd_brownian_mc, "Monte Carlo small-ball probability")):
        b = bsub.add_parser(name, parents=[parent], allow_abbrev=False,
                            help=text)
        b.add_argument("--t", type=float, default=1.0, help="Horizon")
        if name != 'laplace':
            b.add_argument("--times", type=float_list, default=None,
                           help="Comma-separated observation times")
            b.add_argument("--boxes", type=str, default=None,
                           help="Comma-separated boxes a:b, :b, a: or :")
            b.add_argument("--x0", type=float, default=0.0)
        if name in ('laplace', 'chain'):
            b.add_argument("--gamma", type=float, required=True)
        if name == 'mc':
            b.add_argument("--epsilon", type=float, required=True)
            b.add_argument("--paths", type=int, default=100000)
            b.add_argument("--steps", type=int, default=500)
        b.set_defaults(func=func)

    p = sub.add_parser("verify", parents=[parent], allow_abbrev=False,
                       help="Run verification suites")
    p.add_argument("--suite", choices=('core', 'lattice', 'brownian', 'all'),
                   default='all')
    p.add_argument("--out", metavar="FILE", default=None,
                   help="Write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)
    return parser


class Context(object):
    """Resolved options shared by the commands."""

    def __init__(self, args, logger, stream):
        self.args = args
        self.logger = logger
        self.stream = stream
        self.settings = get_settings(logger=logger, preffile=args.config)

        def pick(value, key):
            return self.settings.get(key) if value is None else value

        self.seed = SeedSpec(int(pick(args.seed, 'seed')))
        self.threads = int(pick(args.threads, 'threads'))
        self.batch_size = int(self.settings.get('batch_size'))
        self.min_hits = int(self.settings.get('min_hits'))
        self.window_fraction = float(self.settings.get('window_fraction'))
        self.quad = QuadratureConfig.from_settings(self.settings)

    def record(self, rec):
        """Print one record as a JSON object or a one-row CSV table."""
        if self.args.fmt == 'csv':
            names = sorted(rec.keys())
            write_table([[rec[k]] for k in names], names, stream=self.stream)
        else:
            self.stream.write(dumps(rec) + '\n')

    def table(self, columns, names):
        write_table(columns, names, stream=self.stream,
                    fmt=self.args.fmt or 'csv')


def _zero(x):
    # no negative zeros in the output
    return float(x) + 0.0


def cmd_convert(ctx):
    args = ctx.args
    pair = core.pair_from_alpha(args.alpha)
    if args.r is not None:
        r = core.check_rate(args.r, 'r')
        s = core.s_from_r(r, pair)
    else:
        s = core.check_rate(args.s, 's')
        r = core.r_from_s(s, pair)
    ctx.record(dict(alpha=pair.alpha, beta=pair.beta, r=_zero(r), s=_zero(s),
                    residual=core.identity_residual(r, s, pair)))


def _lambda_grid(args):
    if args.lam is not None:
        return np.array(args.lam)
    return estimators.geometric_grid(args.lam_min, args.lam_max, args.points)


def cmd_example(ctx):
    args = ctx.args
    dist = lattice.LatticeDistribution(q=args.q, s=args.s, beta=args.beta)
    pair = core.pair_from_beta(dist.beta)

    if args.emit == 'pmf':
        if args.n < 1:
            raise DomainError("--n must be >= 1, got %r" % (args.n,))
        idx = np.arange(1, args.n + 1)
        ctx.table([idx, dist.q ** idx,
                   [lattice.lattice_pmf(dist, k) for k in idx]],
                  ['n', 'epsilon', 'pmf'])

    elif args.emit == 'cdf':
        if args.epsilon is not None:
            eps = np.array(args.epsilon)
        else:
            eps = estimators.geometric_grid(dist.q ** args.n, dist.q,
                                            args.points, decreasing=True)
        log_cdf = np.array([lattice.lattice_log_cdf(dist, e) for e in eps])
        ctx.table([eps, np.exp(log_cdf), eps ** dist.beta * log_cdf],
                  ['epsilon', 'cdf', 'eps_beta_log_cdf'])

    elif args.emit == 'laplace':
        lams = _lambda_grid(args)
        log_l = np.array([lattice.lattice_log_laplace(dist, lam,
                                                      logger=ctx.logger)
                          for lam in lams])
        with np.errstate(divide='ignore', invalid='ignore'):
            rate = lams ** (-pair.alpha) * log_l
        ctx.table([lams, np.exp(log_l), log_l, rate],
                  ['lambda', 'laplace', 'log_laplace',
                   'lambda_alpha_log_laplace'])

    else:
        theory = lattice.lattice_theoretic_rates(dist, pair)
        lams = _lambda_grid(args)
        grid = estimators.TailGrid.from_log_values(
            lams, [lattice.lattice_log_laplace(dist, lam, logger=ctx.logger)
                   for lam in lams])
        est = estimators.laplace_rate_window(grid, pair.alpha,
                                             ctx.window_fraction)
        ctx.record(dict(alpha=pair.alpha, beta=pair.beta,
                        s_lower=theory.s_lower, s_upper=theory.s_upper,
                        r_upper=theory.r_upper,
                        r_lower_band_lower=theory.r_lower_band.lower,
                        r_lower_band_upper=theory.r_lower_band.upper,
                        window_sup=est.window_sup,
                        window_inf=est.window_inf))


def _grid_and_boxes(args, required=True):
    if args.times is None:
        if required or args.boxes is not None:
            raise DomainError("--times is required")
        return None, None
    grid = TimeGrid(args.t, tuple(args.times))
    if args.boxes is None:
        boxes = BoxFamily.everything(len(grid))
    else:
        boxes = BoxFamily.from_string(args.boxes)
    if len(boxes) != len(grid):
        raise DomainError("%d boxes for %d times" % (len(boxes), len(grid)))
    return grid, boxes


def cmd_brownian_laplace(ctx):
    args = ctx.args
    lam = args.gamma ** 2 / 2.0
    exact = l2_log_laplace(lam, args.t)
    grid = TimeGrid(args.t, (args.t,))
    chain = chain_log_functional(0.0, grid, BoxFamily.everything(1),
                                 args.gamma, ctx.quad, logger=ctx.logger)
    ctx.record(dict(gamma=args.gamma, t=args.t, lam=lam, log_laplace=exact,
                    chain=chain, difference=abs(chain - exact)))


def cmd_brownian_chain(ctx):
    args = ctx.args
    grid, boxes = _grid_and_boxes(args)
    value = chain_log_functional(args.x0, grid, boxes, args.gamma, ctx.quad,
                                 logger=ctx.logger)
    ctx.record(dict(gamma=args.gamma, t=args.t, x0=args.x0,
                    log_functional=value, scaled=value / args.gamma,
                    asymptotic=bsqr_asymptotic_rate(args.x0, grid, boxes)))


def cmd_brownian_rate(ctx):
    args = ctx.args
    grid, boxes = _grid_and_boxes(args)
    ctx.record(dict(t=args.t, x0=args.x0,
                    bsqr=_zero(bsqr_asymptotic_rate(args.x0, grid, boxes)),
                    condbb=_zero(condbb_rate(grid, boxes))))


def cmd_brownian_mc(ctx):
    args = ctx.args
    eps = args.epsilon
    if not eps > 0:
        raise DomainError("--epsilon must be positive, got %r" % (eps,))
    expected = args.paths * np.exp(l2_smallball_rate(args.t) / eps)
    if expected < ctx.min_hits:
        raise DegenerateConditioningError(
            "eps=%g too small for %d paths: about %.3g expected hits, need "
            "%d; increase --paths or eps" % (eps, args.paths, expected,
                                             ctx.min_hits))
    config = PathSampleConfig(steps=args.steps, n_paths=args.paths,
                              seed=ctx.seed, batch_size=ctx.batch_size,
                              threads=ctx.threads)
    grid, boxes = _grid_and_boxes(args, required=False)
    if grid is None:
        est = mc_smallball(eps, config, args.t, logger=ctx.logger,
                           min_hits=ctx.min_hits)
        rec = dict(asymptotic=l2_smallball_rate(args.t))
        if est.p_hat > 0:
            rec['eps_log_p'] = eps * np.log(est.p_hat)
    else:
        est = mc_conditional(grid, boxes, eps, config, logger=ctx.logger,
                             min_hits=ctx.min_hits)
        rec = dict(asymptotic=_zero(condbb_rate(grid, boxes)))
    rec.update(epsilon=eps, t=args.t, paths=args.paths, steps=args.steps,
               seed=ctx.seed.root_seed, p_hat=est.p_hat,
               ci_halfwidth=est.ci_halfwidth, hits=est.hits,
               trials=est.trials, reliable=est.reliable)
    ctx.record(rec)


def cmd_verify(ctx):
    args = ctx.args
    options = dict(quad=ctx.quad, threads=ctx.threads,
                   batch_size=ctx.batch_size)
    report = verify.run_suite(args.suite, ctx.seed, options,
                              logger=ctx.logger)
    text = dumps(report.as_dict()) + '\n'
    if args.out is None:
        ctx.stream.write(text)
    else:
        with io.open(args.out, 'w', encoding='utf-8') as out_f:
            out_f.write(text)
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        raise VerificationFailure("%d of %d checks failed: %s" % (
            len(failed), len(report.checks), ', '.join(failed)))


def main(argv=None, stream=None):
    """Run the command line and return the exit status."""
    stream = sys.stdout if stream is None else stream
    args = make_parser().parse_args(argv)
    logger = get_logger(options=args)
    try:
        args.func(Context(args, logger, stream))
    except TauberianError as e:
        logger.error(str(e))
        sys.stderr.write("exptauber: %s\n" % (e,))
        return e.exit_code
    except OSError as e:
        logger.error("I/O error: %s" % (e,))
        sys.stderr.write("exptauber: %s\n" % (e,))
        return EXIT_IO
    return 0


def _main():
    sys.exit(main())


if __name__ == '__main__':
    _main()
