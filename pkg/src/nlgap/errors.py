"""Exception hierarchy.

Every error carries an ``exit_code`` used by the CLI: 2 for bad input,
3 for a resource cap, 4 for an internal inconsistency.
"""


class GapError(Exception):
    exit_code = 1

    @property
    def code(self) -> str:
        return type(self).__name__


class InputError(GapError, ValueError):
    exit_code = 2


class ResourceCapError(GapError):
    exit_code = 3


class InconsistencyError(GapError):
    exit_code = 4


# graph construction
class RejectLoop(InputError):
    pass


class RejectDuplicateEdge(InputError):
    pass


class RejectNonpositiveWeight(InputError):
    pass


class RejectDisconnected(InputError):
    pass


class RejectTooSmall(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class SizeCapExceeded(ResourceCapError):
    pass


class PairingFailed(ResourceCapError):
    pass


# metric spaces
class MalformedMatrix(InputError):
    pass


class AsymmetricMatrix(InputError):
    pass


class NonzeroDiagonal(InputError):
    pass


class NonpositiveOffDiagonal(InputError):
    pass


class TriangleViolation(InputError):
    def __init__(self, message: str, witness: tuple[int, int, int]):
        super().__init__(message)
        self.witness = witness


class NonpositiveDelta(InputError):
    pass


class DuplicateValue(InputError):
    pass


class InvalidMap(InputError):
    pass


# spectra
class DegenerateSpectrum(InconsistencyError):
    pass


# path method
class NotATree(InputError):
    pass


class NotAHammingCube(InputError):
    pass


class MissingLevelMetadata(InputError):
    pass


class EdgeOutsideSupport(InputError):
    pass


class InvalidPath(InputError):
    pass


# nonlinear gaps
class ConstantMap(InputError):
    pass


class SearchSpaceTooLarge(ResourceCapError):
    pass


class EmptyOrFullSubset(InputError):
    pass


# closed forms
class DomainError(InputError):
    pass


class DistortionBelowOne(InputError):
    pass


class NotAPathGraph(InputError):
    pass


# reports
class InconsistentBounds(InconsistencyError):
    pass


class FileFormatError(InputError):
    pass
