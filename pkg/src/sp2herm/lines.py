"""Isotropic lines in A^2 and their transversality and positivity invariants.

A line is a right submodule x * A spanned by a regular isotropic column
x = (x1, x2): regular meaning the stacked 2n x n matrix has full rank,
isotropic meaning omega(x, x) = sigma(x1) x2 - sigma(x2) x1 = 0.  The
standard lines are

    ell_plus = (1, 0) A,   ell_minus = (0, 1) A,   ell_one = (1, 1) A,

and ell(b) = (1, -b) A for symmetric b.  Representatives are canonicalized
by right-multiplying with the inverse square root of the Gram matrix, so a
stored representative always has orthonormal columns in the ground-field
embedding; equality of lines is equality of column-space projectors.

Transverse pairs can be normalized to (ell_plus, ell_minus) by a symplectic
element, transverse-enough triples carry a symmetric invariant b whose
positivity picks out the maximal triples, and positive quadruples carry a
positive invariant a determined up to conjugation by the unitary group.
"""

from __future__ import annotations

import numpy as np

from . import algebra as al
from .algebra import AlgebraDescriptor, AlgebraElement
from .errors import (
    DegenerateLine,
    DescriptorMismatch,
    NotInvertible,
    NotMaximal,
    NotPositiveQuadruple,
    NotTransverse,
)
from .symplectic import SymplecticElement, omega_form


def _stacked_embed(x1: AlgebraElement, x2: AlgebraElement) -> np.ndarray:
    """Ground-field matrix of the tall column (x1, x2)."""
    if x1.descriptor.kind in ("R", "C"):
        return np.vstack([x1.data, x2.data])
    t1 = np.vstack([x1.data[0], x2.data[0]])
    t2 = np.vstack([x1.data[1], x2.data[1]])
    return np.block([[t1, t2], [-np.conj(t2), np.conj(t1)]])


class IsotropicLine:
    """Isotropic right line in A^2, stored via an orthonormal representative."""

    __slots__ = ("descriptor", "x1", "x2")

    def __init__(self, x1: AlgebraElement, x2: AlgebraElement):
        if not x1.descriptor.compatible(x2.descriptor):
            raise DescriptorMismatch("line components over different algebras")
        desc = x1.descriptor
        tol = desc.tol
        stacked = _stacked_embed(x1, x2)
        nrm = np.linalg.norm(stacked)
        if nrm == 0:
            raise DegenerateLine("zero representative")
        smin = np.linalg.svd(stacked, compute_uv=False)[-1]
        if smin <= tol * nrm:
            raise DegenerateLine("representative is rank deficient")
        resid = omega_form((x1, x2), (x1, x2)).norm()
        if resid > tol * nrm**2:
            raise DegenerateLine(f"representative not isotropic (residual {resid:.3e})")
        # canonical representative: divide by the square root of the Gram
        gram = x1.sigma() * x1 + x2.sigma() * x2
        si = al.sqrt_positive(gram).inv()
        object.__setattr__(self, "descriptor", desc)
        object.__setattr__(self, "x1", x1 * si)
        object.__setattr__(self, "x2", x2 * si)

    def __setattr__(self, name, value):
        raise AttributeError("IsotropicLine is immutable")

    # -- standard lines ---------------------------------------------------

    @classmethod
    def ell_plus(cls, descriptor: AlgebraDescriptor) -> "IsotropicLine":
        return cls(al.identity(descriptor), al.zeros(descriptor))

    @classmethod
    def ell_minus(cls, descriptor: AlgebraDescriptor) -> "IsotropicLine":
        return cls(al.zeros(descriptor), al.identity(descriptor))

    @classmethod
    def ell_one(cls, descriptor: AlgebraDescriptor) -> "IsotropicLine":
        return cls(al.identity(descriptor), al.identity(descriptor))

    @classmethod
    def ell_of(cls, b: AlgebraElement) -> "IsotropicLine":
        """The line (1, -b) A for symmetric b."""
        if not al.is_symmetric(b):
            raise DegenerateLine("ell(b) needs a symmetric b")
        return cls(al.identity(b.descriptor), -b)

    # -- comparison --------------------------------------------------------

    def projector(self) -> np.ndarray:
        q = _stacked_embed(self.x1, self.x2)
        return q @ np.conj(q.T)

    def distance(self, other: "IsotropicLine") -> float:
        if not self.descriptor.compatible(other.descriptor):
            raise DescriptorMismatch("lines over different algebras")
        return float(np.linalg.norm(self.projector() - other.projector()))

    def is_same(self, other: "IsotropicLine") -> bool:
        return self.distance(other) <= self.descriptor.tol

    def rep(self):
        return (self.x1, self.x2)

    def to_data(self) -> dict:
        return {"x1": self.x1.to_data(), "x2": self.x2.to_data()}

    @classmethod
    def from_data(cls, descriptor: AlgebraDescriptor, obj: dict) -> "IsotropicLine":
        return cls(
            AlgebraElement.from_data(descriptor, obj["x1"]),
            AlgebraElement.from_data(descriptor, obj["x2"]),
        )

    def __repr__(self):
        return f"IsotropicLine({self.descriptor.kind}, n={self.descriptor.n})"


def act(g: SymplecticElement, line: IsotropicLine) -> IsotropicLine:
    """Image line under the symplectic element."""
    y1, y2 = g.act(line.rep())
    return IsotropicLine(y1, y2)


def is_transverse(l1: IsotropicLine, l2: IsotropicLine) -> bool:
    """Whether the two lines span A^2; equivalent to omega(x, y) invertible."""
    if not l1.descriptor.compatible(l2.descriptor):
        raise DescriptorMismatch("lines over different algebras")
    m = np.hstack([_stacked_embed(*l1.rep()), _stacked_embed(*l2.rep())])
    smin = np.linalg.svd(m, compute_uv=False)[-1]
    return bool(smin > l1.descriptor.tol)


def normalize_pair(l1: IsotropicLine, l2: IsotropicLine) -> SymplecticElement:
    """Symplectic g with g(l1) = ell_plus and g(l2) = ell_minus.

    Unique up to the stabilizer of the standard pair.  Deterministic given
    the canonical representatives.
    """
    x1, x2 = l1.rep()
    y1, y2 = l2.rep()
    w = omega_form((x1, x2), (y1, y2))
    if not al.is_invertible(w):
        raise NotTransverse("pair matrix is singular")
    wi = w.inv()
    m = SymplecticElement(x1, y1 * wi, x2, y2 * wi)
    return m.inverse()


def triple_invariant(
    l1: IsotropicLine, l2: IsotropicLine, l3: IsotropicLine
) -> AlgebraElement:
    """Symmetric invariant b of a pairwise transverse triple.

    After moving (l1, l2) to the standard pair, l3 lands on (b, 1) A; the
    triple is maximal exactly when b is positive definite.
    """
    g = normalize_pair(l1, l2)
    z1, z2 = g.act(l3.rep())
    try:
        b = z1 * z2.inv()
    except NotInvertible as exc:
        raise NotTransverse("third line not transverse to the first") from exc
    return 0.5 * (b + b.sigma())


def is_maximal_triple(l1: IsotropicLine, l2: IsotropicLine, l3: IsotropicLine) -> bool:
    try:
        return al.is_positive(triple_invariant(l1, l2, l3))
    except NotTransverse:
        return False


def normalize_triple(
    l1: IsotropicLine, l2: IsotropicLine, l3: IsotropicLine
) -> SymplecticElement:
    """Symplectic g sending a maximal triple to (ell_plus, ell_minus, ell_one).

    Unique up to the diagonal unitary stabilizer {diag(u, u)}.
    """
    b = triple_invariant(l1, l2, l3)
    if not al.is_positive(b):
        raise NotMaximal("triple invariant is not positive definite")
    q = al.sqrt_positive(b)
    return SymplecticElement.diagonal(q.inv()) * normalize_pair(l1, l2)


def quadruple_invariant(
    l1: IsotropicLine, l2: IsotropicLine, l3: IsotropicLine, l4: IsotropicLine
) -> AlgebraElement:
    """Positive invariant of a positive quadruple, read in the normal form
    (ell_plus, ell(a), ell_minus, ell_one).

    Requires (l1, l2, l3) and (l1, l3, l4) maximal; the result is determined
    up to conjugation by a unitary, so compare via canonical_spectrum.
    """
    if not is_maximal_triple(l1, l2, l3):
        raise NotPositiveQuadruple("(l1, l2, l3) is not maximal")
    if not is_maximal_triple(l1, l3, l4):
        raise NotPositiveQuadruple("(l1, l3, l4) is not maximal")
    g = normalize_triple(l1, l3, l4)
    z1, z2 = g.act(l2.rep())
    try:
        a = -(z2 * z1.inv())
    except NotInvertible as exc:
        raise NotPositiveQuadruple("l2 not transverse to l1") from exc
    a = 0.5 * (a + a.sigma())
    if not al.is_positive(a):
        raise NotPositiveQuadruple("quadruple invariant is not positive definite")
    return a


def canonical_spectrum(a: AlgebraElement) -> np.ndarray:
    """Ascending eigenvalues of a symmetric element in the ground embedding;
    a complete invariant for unitary conjugation of positive elements."""
    return al.symmetrized_eigenvalues(a)
