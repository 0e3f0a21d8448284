"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed or non-finite input data."""


class NotNilpotent(RuntimeError):
    """A nilpotent-only formula was requested for a non-nilpotent algebra."""


class NotLie(RuntimeError):
    """A bracket (given directly or via extension data) violates Jacobi."""


class NotApplicable(RuntimeError):
    """The requested construction does not apply to this input."""


class SingularK0(InvalidInput):
    """The skew block passed to the block-form generator is not invertible."""


class ConstraintViolation(InvalidInput):
    """Parameters fail the trace constraint of the two-step construction."""


class DegenerateGram(InvalidInput):
    """A gram matrix required to be nondegenerate is singular at tolerance."""


class UnknownName(KeyError):
    """Catalog name or metric variant that does not exist."""


class BadParams(InvalidInput):
    """Metric parameters outside the stated constraints."""
