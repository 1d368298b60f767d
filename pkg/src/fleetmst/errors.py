"""Exception hierarchy shared by all fleetmst modules."""


class GraphError(Exception):
    """Base class for every error raised by this package."""


class IdOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class InvalidWeight(GraphError):
    """Weight is not an exact decimal (e.g. a binary float or 1/3)."""


class ParseError(GraphError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownEdge(GraphError):
    pass


class TooLarge(GraphError):
    pass


class TooManyEdges(GraphError):
    pass


class IsolatedNode(GraphError):
    pass


class AlreadyClaimed(GraphError):
    pass


class InconsistentModel(GraphError):
    pass


class NoProgress(GraphError):
    """A merge round made no progress; indicates an implementation bug."""
