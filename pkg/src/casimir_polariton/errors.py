"""Exception and warning types shared across the package."""


class CasimirError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of a function."""


class BracketInvalid(CasimirError, ValueError):
    """A root bracket does not contain a sign change."""


class NoConvergence(CasimirError, RuntimeError):
    """An iterative solver hit its iteration cap."""


class PoleProximityWarning(RuntimeWarning):
    """A TE reflection coefficient was evaluated next to its pole."""


class ConvergenceWarning(RuntimeWarning):
    """A quadrature returned a best estimate above the requested tolerance."""
