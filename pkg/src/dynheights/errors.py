"""Exception hierarchy shared by all modules.

Every failure mode that callers are expected to handle gets its own class;
anything else is a plain bug and surfaces as an ordinary exception.
"""


class DynheightsError(Exception):
    """Base class for all library errors."""


class InvalidInput(DynheightsError):
    """Malformed or contract-violating input data."""


class DomainError(DynheightsError):
    """Value outside the mathematical domain of an operation."""


class PreconditionError(DynheightsError):
    """A stated mathematical precondition does not hold."""


class InvariantViolation(DynheightsError):
    """Data that should be impossible for well-formed inputs was produced."""


class DegenerateFiber(DynheightsError):
    """A Vieta involution is undefined on the fiber through the given point."""


class ResourceLimit(DynheightsError):
    """A configured resource cap was exceeded.

    Carries whatever partial result was computed before the cap was hit.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
