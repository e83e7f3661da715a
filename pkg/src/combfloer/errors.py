"""Exception types shared across the package."""


class CombFloerError(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ParseError(CombFloerError):
    pass


class Unsupported(CombFloerError):
    pass


class DegenerateContact(CombFloerError):
    pass


class InconsistentPropagation(CombFloerError):
    exit_code = 2


class PointOnLoop(CombFloerError):
    pass


class NotEmbedded(CombFloerError):
    pass


class BadDeck(CombFloerError):
    pass


class DegenerateSegment(CombFloerError):
    pass


class NotTransverse(CombFloerError):
    pass


class OddTraceSum(CombFloerError):
    exit_code = 2


class ArcConditionRequired(CombFloerError):
    pass


class EndpointMismatch(CombFloerError):
    pass


class PointClassificationFailed(CombFloerError):
    exit_code = 2


class InvariantViolated(CombFloerError):
    exit_code = 2


class TheoremViolated(CombFloerError):
    exit_code = 2


class ClassificationFailed(CombFloerError):
    exit_code = 2


class NotAComplex(CombFloerError):
    pass


class PivotNotUnit(CombFloerError):
    pass


class NotPrimitive(CombFloerError):
    pass


class ClearanceFailure(CombFloerError):
    pass


class PathObstructed(CombFloerError):
    pass


class NotAdjacent(PivotNotUnit):
    pass
