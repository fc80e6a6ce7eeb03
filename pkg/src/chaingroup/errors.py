"""Exception hierarchy shared by all modules."""


class ChainGroupError(Exception):
    """Base class for every error raised by this package."""


class GraphError(ChainGroupError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexOutOfRange(GraphError):
    pass


class LoopError(GraphError):
    pass


class ConflictingLink(GraphError):
    pass


class DuplicateLink(ConflictingLink):
    pass


class TooManyVertices(GraphError):
    pass


class DomainError(ChainGroupError):
    """The input graph is outside the class an operation is defined on."""


class NotMetaArrow(ChainGroupError):
    pass


class NotDecomposable(ChainGroupError):
    def __init__(self, message, cycle=None):
        self.cycle = cycle
        super().__init__(message)


class SizeMismatch(ChainGroupError):
    pass


class TooLarge(ChainGroupError):
    pass


class SampleTooSmall(ChainGroupError):
    pass


class RankDeficientData(ChainGroupError):
    pass


class SingularMatrix(ChainGroupError):
    pass
