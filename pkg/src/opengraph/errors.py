"""Exception taxonomy shared by every module."""


class OpenGraphError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(OpenGraphError):
    pass


class DanglingEndpoint(InvalidGraph):
    pass


class DuplicateId(InvalidGraph):
    pass


class BranchingEdgePoint(InvalidGraph):
    pass


class NotContractible(OpenGraphError):
    pass


class NotAnOpenEmbedding(OpenGraphError):
    pass


class IncoherentBoundaries(OpenGraphError):
    pass


class OpenConditionViolated(OpenGraphError):
    pass


class NotAPointGraph(OpenGraphError):
    pass


class BoundaryMismatch(OpenGraphError):
    pass


class StaleMatching(OpenGraphError):
    pass


class InvalidRule(OpenGraphError):
    pass


class ArityViolation(OpenGraphError):
    pass


class StepLimitExceeded(OpenGraphError):
    """Raised when normalisation hits its step budget.

    ``derivation`` holds the partial derivation computed so far.
    """

    def __init__(self, message, derivation=None):
        super().__init__(message)
        self.derivation = derivation


class CyclicCircuit(OpenGraphError):
    pass


class NonBooleanVertex(OpenGraphError):
    pass
