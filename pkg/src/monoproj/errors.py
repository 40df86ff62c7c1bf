"""Shared exception types."""


class MonoprojError(Exception):
    """Base class for all package errors."""


class SemiringMismatchError(MonoprojError):
    """Operands or objects belong to different semiring instances."""


class RingMismatchError(MonoprojError):
    """Variable lists or ambient rings do not match."""


class UnboundedError(MonoprojError):
    """An H-polytope turned out to be unbounded where a polytope was required."""


class CeilingExceededError(MonoprojError):
    """A desk-scale size ceiling was exceeded."""


class DegreeBoundExceededError(CeilingExceededError):
    """A substituted monomial exceeds the configured degree bound."""


class SearchSpaceExceededError(CeilingExceededError):
    """The projection search space exceeds the configured ceiling."""
