"""Exception hierarchy shared by every module."""


class BiunivalentError(ValueError):
    """Base class; CLI maps these to exit code 1 unless noted."""


class OrderMismatch(BiunivalentError):
    pass


class NotNormalized(BiunivalentError):
    pass


class InvalidProfile(BiunivalentError):
    pass


class B1NotPositive(InvalidProfile):
    pass


class HypothesisViolated(InvalidProfile):
    """B2 is not real."""


class NoRegionPredicate(BiunivalentError):
    pass


class NoClosedForm(BiunivalentError):
    pass


class InvalidLambda(BiunivalentError):
    pass


class OnSingularLine(BiunivalentError):
    pass


class BoxTooSmall(BiunivalentError):
    pass


class DegenerateDisk(BiunivalentError):
    pass


class InvalidBracket(BiunivalentError):
    pass


class InvalidSchwarz(BiunivalentError):
    pass


class InternalInconsistency(AssertionError):
    """Two routes to the same quantity disagree. Never expected."""


class TheoremViolation(AssertionError):
    """A sampled instance exceeds a proven bound."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending or []
