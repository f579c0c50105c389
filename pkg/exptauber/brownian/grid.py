from __future__ import absolute_import, division, print_function

from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError
from ..numerics import SeedSpec

__all__ = ['KernelParams', 'TimeGrid', 'Box', 'BoxFamily', 'PathSampleConfig',
           'close_chain']


@dataclass(frozen=True)
class KernelParams:
    """Damping ``gamma`` (``lambda = gamma**2 / 2``) and time step ``t``."""

    gamma: float
    t: float

    def __post_init__(self):
        if not (self.gamma > 0 and self.t > 0):
            raise DomainError("gamma and t must be positive, got gamma=%r "
                              "t=%r" % (self.gamma, self.t))


@dataclass(frozen=True)
class TimeGrid:
    """Observation times ``0 < t_1 < ... < t_n <= horizon``."""

    horizon: float
    times: tuple

    def __post_init__(self):
        times = tuple(float(u) for u in self.times)
        object.__setattr__(self, 'times', times)
        if not self.horizon > 0:
            raise DomainError("horizon must be positive, got %r" % (
                self.horizon,))
        if len(times) == 0:
            raise DomainError("time grid needs at least one time")
        if times[0] <= 0 or np.any(np.diff(times) <= 0):
            raise DomainError("times must be positive and strictly "
                              "increasing, got %r" % (times,))
        if times[-1] > self.horizon:
            raise DomainError("last time %r exceeds the horizon %r" % (
                times[-1], self.horizon))

    @property
    def ends_at_horizon(self):
        return self.times[-1] == self.horizon

    @property
    def steps(self):
        """Time increments ``t_1, t_2 - t_1, ...``."""
        return np.diff(np.concatenate([[0.0], self.times]))

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class Box:
    """Interval ``[lower, upper]``; either end may be infinite."""

    lower: float = -np.inf
    upper: float = np.inf

    def __post_init__(self):
        if np.isnan(self.lower) or np.isnan(self.upper):
            raise DomainError("box ends must not be NaN")
        if self.lower > self.upper:
            raise DomainError("empty box [%r, %r]" % (self.lower, self.upper))

    @classmethod
    def from_string(cls, text):
        """Parse ``a:b``, ``:b``, ``a:`` or ``:``."""
        text = text.strip()
        if text.count(':') != 1:
            raise DomainError("cannot parse box %r, expected 'a:b'" % (text,))
        lo, hi = text.split(':')
        try:
            lower = float(lo) if lo.strip() else -np.inf
            upper = float(hi) if hi.strip() else np.inf
        except ValueError:
            raise DomainError("cannot parse box %r" % (text,))
        return cls(lower, upper)

    def clip(self, z):
        """Point of the box nearest to ``z``."""
        return min(max(z, self.lower), self.upper)

    def contains(self, z):
        return (self.lower <= z) & (z <= self.upper)

    def nearest_to_zero(self):
        return self.clip(0.0)


class BoxFamily(tuple):
    """One `Box` per observation time."""

    def __new__(cls, boxes):
        boxes = [b if isinstance(b, Box) else Box(*b) for b in boxes]
        return super(BoxFamily, cls).__new__(cls, boxes)

    @classmethod
    def from_string(cls, text):
        return cls([Box.from_string(item) for item in text.split(',')])

    @classmethod
    def everything(cls, n):
        return cls([Box() for _ in range(n)])

    def contains(self, points):
        """Row-wise membership for an ``(m, n)`` array of skeleton values."""
        points = np.atleast_2d(points)
        inside = np.ones(points.shape[0], dtype=bool)
        for k, box in enumerate(self):
            inside &= box.contains(points[:, k])
        return inside


def close_chain(grid, boxes):
    """Append ``(horizon, R)`` when the grid stops before the horizon."""
    if len(boxes) != len(grid):
        raise DomainError("%d boxes for %d times" % (len(boxes), len(grid)))
    if grid.ends_at_horizon:
        return grid, boxes
    return (TimeGrid(grid.horizon, grid.times + (grid.horizon,)),
            BoxFamily(list(boxes) + [Box()]))


@dataclass(frozen=True)
class PathSampleConfig:
    """Discretization of Wiener measure: ``steps`` uniform increments per
    path, ``n_paths`` paths, drawn in batches of ``batch_size``."""

    steps: int
    n_paths: int
    seed: SeedSpec = SeedSpec()
    batch_size: int = 2000
    threads: int = 1

    def __post_init__(self):
        if self.steps < 2 or self.n_paths < 1:
            raise DomainError("need steps >= 2 and n_paths >= 1, got %r, %r" % (
                self.steps, self.n_paths))
        if self.batch_size < 1 or self.threads < 1:
            raise DomainError("batch_size and threads must be >= 1")
