"""Exception hierarchy shared by every module."""


class InstabilityError(Exception):
    """Base class; the CLI maps subclasses of this to exit status 2."""


class ResourceBoundError(InstabilityError):
    """Raised when an input exceeds a configured size bound (CLI exit 3)."""


class ZeroVector(InstabilityError):
    pass


class DimensionMismatch(InstabilityError):
    pass


class NotStrictlyConvex(InstabilityError):
    pass


class NotSimplicial(InstabilityError):
    pass


class NotSurjective(InstabilityError):
    pass


class OutsideSupport(InstabilityError):
    pass


class IncompatibleClass(InstabilityError):
    pass


class NotPositiveDefinite(InstabilityError):
    pass


class NonConvexSupport(InstabilityError):
    pass


class OutsideU(InstabilityError):
    pass


class DegreeOverflow(InstabilityError):
    pass


class DegenerateB(InstabilityError):
    pass


class InconsistentTotal(InstabilityError):
    pass


class ZeroRankPair(InstabilityError):
    pass


class NotConvex(InstabilityError):
    pass


class EndpointMismatch(InstabilityError):
    pass


class OutOfRange(InstabilityError):
    pass


class NotATorsionTheory(InstabilityError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class AmbiguousMaxDestabilizer(InstabilityError):
    def __init__(self, msg, candidates=None):
        super().__init__(msg)
        self.candidates = candidates


class NotValid(InstabilityError):
    def __init__(self, msg, violations=None):
        super().__init__(msg)
        self.violations = violations or []


class NotNested(InstabilityError):
    pass


class WeightsNotIncreasing(InstabilityError):
    pass


class UnsupportedFormat(InstabilityError):
    pass


class TooLarge(ResourceBoundError):
    pass


class SchemaError(InstabilityError):
    """Input file does not match the expected JSON/CSV layout."""
