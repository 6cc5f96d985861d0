"""Custom exceptions for SSDO."""

from collections.abc import Sequence


class SsdoError(Exception):
    """Base exception for SSDO errors."""

    pass


class GraphParseError(SsdoError):
    """Raised when graph text does not match the expected format."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GraphValidationError(SsdoError):
    """Raised when a parsed graph violates the simple-graph rules."""

    pass


class SptBuildError(SsdoError):
    """Raised when some vertex cannot be reached from the source."""

    def __init__(self, unreachable: Sequence[int]) -> None:
        shown = ", ".join(str(x) for x in unreachable[:10])
        more = f" (+{len(unreachable) - 10} more)" if len(unreachable) > 10 else ""
        super().__init__(f"vertices unreachable from source: {shown}{more}")
        self.unreachable = list(unreachable)


class ContractError(SsdoError):
    """Raised when an operation is called outside its precondition."""

    pass


class BridgeError(SsdoError):
    """Raised in strict mode when a tree edge failure disconnects the graph."""

    def __init__(self, bridges: Sequence[tuple[int, int]]) -> None:
        shown = ", ".join(f"({u},{v})" for u, v in bridges[:10])
        more = f" (+{len(bridges) - 10} more)" if len(bridges) > 10 else ""
        super().__init__(f"graph is not 2-edge-connected, bridges in the tree: {shown}{more}")
        self.bridges = list(bridges)


class ParameterError(SsdoError):
    """Raised when an oracle parameter is out of range."""

    pass


class QueryError(SsdoError):
    """Raised when a failing pair is not an edge of the graph."""

    pass


class ContainerFormatError(SsdoError):
    """Raised when an oracle container cannot be decoded."""

    pass


class FingerprintMismatchError(SsdoError):
    """Raised when a container was built on a different graph."""

    pass


class InfeasibleParamsError(SsdoError):
    """Raised when lower-bound parameters cannot produce a valid instance."""

    pass
