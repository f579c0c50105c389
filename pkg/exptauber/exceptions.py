from __future__ import absolute_import, division, print_function

__all__ = ['TauberianError', 'DomainError', 'EmptyWindowError',
           'QuadratureError', 'DegenerateConditioningError',
           'VerificationFailure']


class TauberianError(Exception):
    """Base class for errors raised by exptauber."""

    exit_code = 1


class DomainError(TauberianError, ValueError):
    """A numeric argument lies outside the domain of an operation."""

    exit_code = 3


class EmptyWindowError(DomainError):
    """A rate window or sample grid has nothing to evaluate."""


class QuadratureError(TauberianError, RuntimeError):
    """Adaptive quadrature exhausted its refinement budget."""

    exit_code = 3


class DegenerateConditioningError(TauberianError):
    """A Monte Carlo conditioning event was hit too rarely (or never)."""

    exit_code = 4


class VerificationFailure(TauberianError):
    """At least one verify check failed."""

    exit_code = 1
