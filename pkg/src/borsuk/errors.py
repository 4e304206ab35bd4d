"""Exception hierarchy shared by every module of the package."""


class BorsukError(Exception):
    """Base class for all errors raised by :mod:`borsuk`."""


class SchemaError(BorsukError):
    """Input JSON does not match the body / partition schema."""


class InvalidBody(BorsukError):
    """A body violates its representation invariants (non-convex, not closed...)."""


class DegenerateInput(InvalidBody):
    """Too few distinct points, all collinear, or zero-area input."""


class NotOnBoundary(BorsukError):
    pass


class EmptyResult(BorsukError):
    """A half-plane clip left nothing of positive area."""


class InvalidParameters(BorsukError):
    pass


class ConstructionFailed(BorsukError):
    """A construction failed its own post-verification."""


class InvalidCut(BorsukError):
    """A certified cut produced a piece that still attains the diameter."""
