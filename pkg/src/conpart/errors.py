"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class PartitionError(Exception):
    """Base class for every error raised by this package."""


# -- input / construction ----------------------------------------------------

class GraphError(PartitionError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class NoEdges(GraphError):
    pass


# -- caller-side preconditions ----------------------------------------------

class PreconditionViolated(PartitionError, ValueError):
    pass


class NotConnected(PreconditionViolated):
    pass


class RootOutsideSubset(PreconditionViolated):
    pass


class TooFewVertices(PreconditionViolated):
    pass


class TooFewEdges(PreconditionViolated):
    pass


class XOutOfRange(PreconditionViolated):
    pass


class CannotReachK(PreconditionViolated):
    pass


class NoBigComponent(PreconditionViolated):
    pass


class NotKConnected(PreconditionViolated):
    pass


class ClawWitnessFound(PreconditionViolated):
    """The input contains an induced star K_{1,c}.

    ``witness`` is ``(center, leaves)``.
    """

    def __init__(self, center: int, leaves: tuple[int, ...]):
        self.witness = (center, tuple(leaves))
        super().__init__(
            f"induced K_1,{len(leaves)} at center {center} "
            f"with leaves {list(leaves)}")


# -- internal invariants (bugs if they ever fire) -----------------------------

class InvariantViolation(PartitionError, RuntimeError):
    pass


class InternalInvariantViolation(InvariantViolation):
    pass


class InnerLoopCapExceeded(InvariantViolation):
    pass


class LoopCapExceeded(InvariantViolation):
    pass


class NoPath(InvariantViolation):
    pass


# -- oracle / generators -------------------------------------------------------

class BudgetExceeded(PartitionError):
    pass


class NoPartitionExists(PartitionError):
    pass


class GenerationFailed(PartitionError):
    pass


class InvalidSpec(PartitionError, ValueError):
    pass


# -- file formats ---------------------------------------------------------------

class GraphFormatError(PartitionError, ValueError):
    pass


class ParseError(GraphFormatError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class InconsistentHeader(GraphFormatError):
    pass
