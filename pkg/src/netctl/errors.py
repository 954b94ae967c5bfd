"""Exception hierarchy shared across the package."""

from __future__ import annotations


class NetctlError(Exception):
    """Base class for all errors raised by this package."""


class EdgeListParseError(NetctlError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SelfLoopError(EdgeListParseError):
    """Self-loops are rejected on ingestion; names the offending node."""

    def __init__(self, node: int, line: int):
        super().__init__(f"self-loop at node {node}", line)
        self.node = node


class EmptyGraphError(NetctlError):
    """Operation undefined on a graph with no nodes."""


class ContractViolationError(NetctlError):
    """Caller passed inconsistent arguments (mismatched analysis/graph,
    invalid matching, dimension mismatch)."""


class InfeasibleSpecError(NetctlError):
    """Generator parameters cannot be realized (e.g. too many edges)."""


class GenerationStallError(NetctlError):
    """Rejection sampling stalled; the requested density is too high for
    the weight distribution."""


class SizeLimitError(NetctlError):
    """Instance exceeds the size bound of an exhaustive or dense-numeric
    routine."""


class UncontrollableError(NetctlError):
    """The requested driver set fails the controllability rank test."""


class IllConditionedError(NetctlError):
    """The steering Gramian is numerically singular; advises remediation."""
