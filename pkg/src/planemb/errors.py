"""Exception types raised across the package.

Each error carries enough context (a witness cut, the offending face pair,
...) for the harness to report it and pick an exit code.
"""


class PlanembError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 3


class NonPlanarRotation(PlanembError):
    pass


class Disconnected(PlanembError):
    pass


class InstanceTooLarge(PlanembError):
    exit_code = 4


class CutConditionViolated(PlanembError):
    exit_code = 2

    def __init__(self, message, witness=None, capacity=None, demand=None):
        super().__init__(message)
        self.witness = witness
        self.capacity = capacity
        self.demand = demand


class Infeasible(PlanembError):
    pass


class NotPlanarUnion(PlanembError):
    pass


class BlockStructureInvalid(PlanembError):
    pass


class LaminarityViolated(PlanembError):
    def __init__(self, message, faces=None):
        super().__init__(message)
        self.faces = faces


class RecursionDepthExceeded(PlanembError):
    pass


class SpanTooFar(PlanembError):
    pass


class SubdivisionOverflow(PlanembError):
    exit_code = 4


class CutNotContiguous(PlanembError):
    pass


class NotAlphaLoose(PlanembError):
    pass


class NoDemands(PlanembError):
    pass


class ParamsInvalid(PlanembError):
    # bad user input, same bucket as an unreadable file
    exit_code = 5


class ParseError(PlanembError):
    exit_code = 5


class InvariantBreach(PlanembError):
    """An exact post-condition check failed (expansion above 1, a bound missed)."""
