"""Exception types shared across the package.

Everything derives from Sp2HermError so callers can catch the library's
failures in one clause; the CLI maps them to machine-readable error JSON.
"""


class Sp2HermError(Exception):
    """Base class for all errors raised by this package."""


class DescriptorMismatch(Sp2HermError):
    """Operands live over different algebras (kind or size differ)."""


class NotInvertible(Sp2HermError):
    """Element is singular at the working tolerance."""


class NotPositive(Sp2HermError):
    """Element is not in the positive-definite symmetric cone."""


class NotUnitary(Sp2HermError):
    """Element fails sigma(a) * a = 1 at the working tolerance."""


class NotSymplectic(Sp2HermError):
    """Block matrix fails the symplectic membership identities."""


class MembershipDrift(NotSymplectic):
    """A product or inverse drifted out of the group numerically."""


class SingularDenominator(Sp2HermError):
    """Moebius denominator c*z + d is not invertible."""


class DegenerateLine(Sp2HermError):
    """Line representative is rank-deficient or not isotropic."""


class NotTransverse(Sp2HermError):
    """Lines are not transverse (the pair matrix is singular)."""


class NotMaximal(Sp2HermError):
    """Triple invariant is not positive definite."""


class NotPositiveQuadruple(Sp2HermError):
    """Quadruple fails the positivity preconditions."""


class InvalidSurface(Sp2HermError):
    """Surface descriptor outside the admissible range."""


class BadPairing(Sp2HermError):
    """Pairing list references missing sides or reuses a side."""


class DisconnectedDomain(Sp2HermError):
    """Triangles do not form a connected disc through diagonals."""


class EulerMismatch(Sp2HermError):
    """Glued complex disagrees with the derived surface counts."""


class Unreachable(Sp2HermError):
    """No path between the requested graph vertices."""


class CycleClosureFailure(Sp2HermError):
    """Local system fails to close up around a graph cycle."""


class UnknownGenerator(Sp2HermError):
    """Holonomy word uses a letter that is not a pairing id."""


class NotAdapted(Sp2HermError):
    """Representation data is not adapted/equivariant for its framing."""


class SizeMismatch(Sp2HermError):
    """Ground-field matrix has the wrong shape for the realization."""
