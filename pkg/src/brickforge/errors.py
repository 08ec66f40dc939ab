"""Exception hierarchy shared by all modules."""


class BrickforgeError(Exception):
    """Base class for every error raised by this package."""


class GraphFormatError(BrickforgeError):
    """Malformed text graph file."""


class LoopRejected(BrickforgeError, ValueError):
    pass


class EmptyOrFullShore(BrickforgeError, ValueError):
    pass


class UnknownEdge(BrickforgeError, KeyError):
    pass


class UnknownVertex(BrickforgeError, KeyError):
    pass


class TooLarge(BrickforgeError):
    """Input exceeds a configured size bound (canonical forms, enumeration)."""


class NoPerfectMatching(BrickforgeError):
    pass


class NotMatchingCovered(BrickforgeError):
    pass


class EvenShore(BrickforgeError, ValueError):
    pass


class NotBipartite(BrickforgeError):
    pass


class NotNearBrick(BrickforgeError):
    pass


class NotRGraph(BrickforgeError):
    pass


class NotRBrick(NotRGraph):
    pass


class BipartiteInput(BrickforgeError):
    pass


class NotRemovable(BrickforgeError):
    pass


class NotBInvariant(BrickforgeError):
    pass


class EdgeInDoubleton(BrickforgeError, ValueError):
    pass


class NotRCompatible(BrickforgeError):
    pass


class AlreadyThin(BrickforgeError):
    pass


class PreconditionViolated(BrickforgeError):
    pass


class WrongDegree(BrickforgeError):
    pass


class IdenticalNeighbors(BrickforgeError):
    pass


class StuckIdenticalNeighbors(IdenticalNeighbors):
    pass


class EmptyPart(BrickforgeError, ValueError):
    pass


class BarrierTooSmall(BrickforgeError):
    pass


class NotAMatching(BrickforgeError):
    pass


class BaseBrick(BrickforgeError):
    """Reduction requested on K4 or the triangular prism."""


class TheoremViolation(BrickforgeError):
    """A structural claim that should always hold failed; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownName(BrickforgeError, KeyError):
    pass
