# graph_core/errors.py

from __future__ import annotations

from typing import Optional


class GraphLabError(Exception):
    """
    Base class for every error raised by the library.
    """


class GraphFormatError(GraphLabError, ValueError):
    """
    Malformed graph, tree or certificate input.
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        """
        :param message: Human-readable description
        :type message: str
        :param line: 1-based line number of the offending input line
        :type line: Optional[int]
        """
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class PreconditionError(GraphLabError, ValueError):
    """
    An operation was called with a violated precondition.
    """


class CertificateError(GraphLabError):
    """
    A certificate handed to a consumer does not hold for its graph.
    """

    def __init__(self, position: int) -> None:
        self.position = position
        super().__init__(f"certificate violated at position {position}")


class ConstructionError(GraphLabError, RuntimeError):
    """
    A construction that the counting argument guarantees has failed.
    """


class BudgetExhausted(GraphLabError):
    """
    A search used up its node budget before finishing.
    """

    def __init__(self, spent: int, limit: int) -> None:
        self.spent = spent
        self.limit = limit
        super().__init__(f"budget exhausted after {spent} nodes (limit {limit})")


class GrowthStalled(GraphLabError):
    """
    Permissive growth found no eligible vertex to add.
    """


class ChainTooShort(GraphLabError):
    """
    A shift chain ended before any chord between its roots appeared.
    """
