"""Exception types raised across the package."""

from __future__ import annotations


class LeafSearchError(Exception):
    """Base class for all errors raised by leafsearch."""


class GraphFormatError(LeafSearchError, ValueError):
    """A graph or CNF document could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(LeafSearchError, ValueError):
    """An operation that needs a connected graph received a disconnected one."""


class OrderingError(LeafSearchError, ValueError):
    """A vertex ordering violates an operation's precondition."""


class GraphClassError(LeafSearchError, ValueError):
    """A characterization was applied outside the graph class it holds for."""


class CapExceededError(LeafSearchError, ValueError):
    """An exhaustive procedure was asked to run on a graph above its size cap."""


class UnknownVertexError(LeafSearchError, KeyError):
    """A vertex name or id does not belong to the graph."""


class TrivialGraphError(LeafSearchError, ValueError):
    """Leaf questions need at least two vertices; a single vertex has no spanning-tree leaf."""
