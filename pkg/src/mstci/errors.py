"""Exception types shared across the package."""


class MstciError(Exception):
    """Base class for all package errors."""


class GraphError(MstciError, ValueError):
    """Invalid graph construction (self-loop, duplicate edge, bad vertex)."""


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class MalformedGraph6(MstciError, ValueError):
    pass


class NotConnected(MstciError, ValueError):
    pass


class InvalidTree(MstciError, ValueError):
    pass


class NotUniversal(MstciError, ValueError):
    pass


class InfeasibleSize(MstciError, ValueError):
    """(n, m) does not describe any connected simple graph."""


class ZeroIntersection(MstciError, ValueError):
    pass


class InvariantViolation(MstciError, AssertionError):
    """A proven statement failed to hold; indicates a bug or a counterexample."""
