"""Exception taxonomy shared by all modules."""


class WplArcsError(Exception):
    """Base class for all package errors."""


class SurfaceMismatch(WplArcsError):
    """Operands belong to different marked annuli."""


class OutOfScope(WplArcsError):
    """Input is valid but outside the operation's domain (loops, ordinary torsion)."""


class NotApplicable(WplArcsError):
    """Preconditions on the shape of the input fail."""


class InvalidCurve(WplArcsError):
    """A move or constructor would produce an ill-formed curve."""


class NotExceptional(WplArcsError):
    """Mutation requested on a pair that is not an exceptional pair."""


class IndexOutOfRange(WplArcsError):
    """Braid letter index does not fit the collection."""


class InvalidArguments(WplArcsError):
    """Numeric arguments outside their documented ranges."""


class SearchExhausted(WplArcsError):
    """A bounded search ran out of budget before reaching its goal."""


class InternalInvariantViolation(WplArcsError):
    """A property that should hold by theorem failed; indicates a bug."""
