"""Exception hierarchy. Every error raised by the library derives from ModspecError."""


class ModspecError(Exception):
    pass


class GraphError(ModspecError, ValueError):
    pass


class LoopRejected(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadIndex(GraphError):
    pass


class BadWeight(GraphError):
    pass


class BadGraph6(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EdgeListParseError(GraphError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyGraph(GraphError):
    pass


class IsolatedVertex(GraphError):
    pass


class Disconnected(GraphError):
    pass


class WeightedUnsupported(GraphError):
    pass


class NotForbidden(ModspecError, ValueError):
    pass


class EdgePresent(ModspecError, ValueError):
    pass


class BadSizes(ModspecError, ValueError):
    pass


class NotNormalized(ModspecError, ValueError):
    pass


class Infeasible(ModspecError, ValueError):
    pass


class TooLarge(ModspecError, ValueError):
    pass


class NoConvergence(ModspecError, ArithmeticError):
    pass


class InternalInconsistency(ModspecError, AssertionError):
    """A self-check between two independent computations disagreed."""
