"""Exception types shared across the package."""


class NonmatchingError(Exception):
    """Base class for all package-specific errors."""


class CapExceededError(NonmatchingError):
    """A resource cap (enumeration size, vertex count, face count) was exceeded."""


class FormatError(NonmatchingError):
    """Malformed input text (graph files, instance files, complex dumps)."""


class EmptyFamilyError(NonmatchingError):
    """A construction was asked to match the empty family (no member graphs).

    Distinct from the one-member family {empty graph}, which is fine.
    """


class MonotonicityError(NonmatchingError):
    """A cluster map was claimed monotone but is not."""


class HypothesisError(NonmatchingError):
    """Preconditions of a theorem-verification run are not met.

    This is an input problem, not a counterexample; genuine counterexamples
    are reported as violation verdicts, never raised.
    """


class InternalCheckError(NonmatchingError):
    """Two independent criteria that must agree disagreed.

    Signals an implementation fault, not bad input.
    """
