"""Exception hierarchy.

Every error raised by this package derives from :class:`ComodularError`,
so callers can catch one type at an API boundary.  Errors are reserved for
misuse (bad dimensions, values outside a declared domain, malformed input);
mathematical negative results such as a failed axiom or a fit that cannot
proceed are returned as values, not raised.
"""


class ComodularError(Exception):
    """Base class for all errors raised by comodular."""


class BadInterval(ComodularError):
    """Interval endpoints are not ordered lo < hi."""


class DimensionMismatch(ComodularError):
    """Operands disagree on the number of criteria."""


class CriteriaLimitExceeded(ComodularError):
    """Requested n is above the supported limit."""


class DuplicateSubset(ComodularError):
    """The same subset was assigned a value twice."""


class SubsetOutOfRange(ComodularError):
    """A subset mentions an element outside 1..n."""


class BadRole(ComodularError):
    """A set function does not satisfy its declared role."""


class NotSignedCapacity(BadRole):
    """Expected v(empty) = 0."""


class NotCapacity(BadRole):
    """Expected a monotone set function vanishing on the empty set."""


class NotIntervalCapacity(BadRole):
    """Expected a monotone set function with prescribed endpoint values."""


class OutOfBox(ComodularError):
    """A coordinate falls outside the ambient box."""


class PointOutsideInterval(ComodularError):
    """An input coordinate falls outside the scale of the aggregation."""


class NegativeInput(ComodularError):
    """The operation is defined for nonnegative inputs only."""


class BadThresholdSign(ComodularError):
    """Threshold has the wrong sign for the requested bracketing."""


class NegativeRadius(ComodularError):
    """Clamping radius must be nonnegative."""


class InternalCrossCheckFailed(ComodularError):
    """Two internal evaluation routes disagreed; indicates a bug, not bad input."""


class TransformError(ComodularError):
    """Base class for scalar transform problems."""


class TransformPropertyMissing(TransformError):
    """The transform lacks a property required by the operation."""


class TransformDomainError(TransformError):
    """The transform was evaluated outside its breakpoint span."""


class TransformRangeError(TransformError):
    """A transformed value left the scale expected by the outer aggregation."""


class MissingTransform(ComodularError):
    """The operation needs an auxiliary transform and none was supplied."""


class EmptyApplicableSet(ComodularError):
    """Every candidate test instance was skipped; verdict would be vacuous."""


class NotNondecreasing(ComodularError):
    """The sampled function decreases somewhere it is required not to.

    Carries the offending pair of points as ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OffAxisPoint(ComodularError):
    """Evaluation point uses a coordinate the stored tables never sampled."""


class DomainGap(ComodularError):
    """The sampling grid cannot reach the points the construction needs."""
