"""Exception hierarchy shared by all modules."""


class AtomsymError(ValueError):
    """Base class for every error raised by this package."""


class ConsistencyError(AtomsymError):
    """An internal consistency check failed (a structural property does not hold)."""


# combinatorial maps
class NotAPermutation(AtomsymError):
    pass


class InvolutionViolation(AtomsymError):
    pass


class Disconnected(AtomsymError):
    pass


class GenusNegative(AtomsymError):
    pass


# atoms
class GenusNonZero(AtomsymError):
    pass


class OddDegreeVertex(AtomsymError):
    pass


class DegreeTwoVertex(AtomsymError):
    pass


class SignAlternationViolation(AtomsymError):
    pass


class NoVertices(AtomsymError):
    pass


class AtomSyntaxError(AtomsymError):
    """Malformed atom or mesh file."""


# meshes and Reeb graphs
class NotClosedSurface(AtomsymError):
    pass


class DegenerateLevel(AtomsymError):
    pass


class NotASaddleNode(AtomsymError):
    pass


class GenusNotZero(AtomsymError):
    pass


# groups and symmetries
class DegreeMismatch(AtomsymError):
    pass


class GroupTooLarge(AtomsymError):
    pass


class NotAnAutomorphism(AtomsymError):
    pass


class ValueNotPreserved(AtomsymError):
    pass


class VertexNotFixed(AtomsymError):
    pass


class KernelNotTrivial(ConsistencyError):
    pass


class EmptyFixedSet(ConsistencyError):
    pass


class LefschetzViolation(ConsistencyError):
    pass
