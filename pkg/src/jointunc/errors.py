"""Exception types raised across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of the operation."""


class DegenerateFamilyError(DomainError):
    """A state family has constant entropy, so normalization is undefined."""


class UnsupportedIndexError(DomainError):
    """The requested entropic index is not supported by the operation."""


class BoundConsistencyError(RuntimeError):
    """A numerically constructed bound vector failed its own invariants."""
