"""Involutive matrix algebras over the reals, complexes and quaternions.

The three ground kinds share one interface: an element is a square n x n
matrix over the ground ring, the involution sigma is the conjugate
transpose, the positive cone consists of the positive-definite symmetric
elements, and the unitary group U = {a : sigma(a) a = 1} is O(n), U(n) or
the compact symplectic group Sp(n) depending on the kind.

Quaternionic matrices are stored as a pair (X1, X2) of complex n x n
matrices representing X1 + X2 * j.  Spectral work (rank, eigenvalues,
square roots, inverses) goes through the complex embedding

    chi(X) = [[X1, X2], [-conj(X2), conj(X1)]],

a multiplicative *-isomorphism onto the 2n x 2n complex matrices commuting
with the antilinear map z -> J conj(z).  Real and complex elements embed as
themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import (
    DescriptorMismatch,
    NotInvertible,
    NotPositive,
    NotUnitary,
)

KINDS = ("R", "C", "H")


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Which matrix algebra we are working over, plus a tolerance.

    kind is one of "R", "C", "H"; n is the matrix size over the ground
    ring; tol is the relative tolerance used by every fuzzy predicate
    downstream (membership, positivity, transversality).
    """

    kind: str
    n: int
    tol: float = 1e-8

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0.0 < self.tol < 1.0):
            raise ValueError(f"tol must be in (0, 1), got {self.tol!r}")

    def compatible(self, other: "AlgebraDescriptor") -> bool:
        return self.kind == other.kind and self.n == other.n

    def to_data(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    @classmethod
    def from_data(cls, obj: dict, tol: float = 1e-8) -> "AlgebraDescriptor":
        return cls(kind=str(obj["kind"]), n=int(obj["n"]), tol=tol)


def _check_same(a: "AlgebraElement", b: "AlgebraElement"):
    if not a.descriptor.compatible(b.descriptor):
        raise DescriptorMismatch(
            f"operands over ({a.descriptor.kind},{a.descriptor.n}) vs "
            f"({b.descriptor.kind},{b.descriptor.n})"
        )


class AlgebraElement:
    """Immutable element of Mat(n, R/C/H) with sigma = conjugate transpose."""

    __slots__ = ("descriptor", "data")

    def __init__(self, descriptor: AlgebraDescriptor, data):
        n = descriptor.n
        if descriptor.kind == "R":
            arr = np.asarray(data, dtype=np.float64)
            shape = (n, n)
        elif descriptor.kind == "C":
            arr = np.asarray(data, dtype=np.complex128)
            shape = (n, n)
        else:
            arr = np.asarray(data, dtype=np.complex128)
            shape = (2, n, n)
        if arr.shape != shape:
            raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("entries must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _check_same(self, other)
        return AlgebraElement(self.descriptor, self.data + other.data)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _check_same(self, other)
        return AlgebraElement(self.descriptor, self.data - other.data)

    def __neg__(self):
        return AlgebraElement(self.descriptor, -self.data)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            _check_same(self, other)
            if self.descriptor.kind in ("R", "C"):
                return AlgebraElement(self.descriptor, self.data @ other.data)
            x1, x2 = self.data
            y1, y2 = other.data
            # (X1 + X2 j)(Y1 + Y2 j); j z = conj(z) j and j^2 = -1
            z1 = x1 @ y1 - x2 @ np.conj(y2)
            z2 = x1 @ y2 + x2 @ np.conj(y1)
            return AlgebraElement(self.descriptor, np.stack([z1, z2]))
        if isinstance(other, Real):
            return AlgebraElement(self.descriptor, self.data * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return AlgebraElement(self.descriptor, float(other) * self.data)
        return NotImplemented

    # -- involution and norms -------------------------------------------

    def sigma(self) -> "AlgebraElement":
        """Conjugate-transpose involution (quaternionic conjugation on entries)."""
        if self.descriptor.kind == "R":
            return AlgebraElement(self.descriptor, self.data.T)
        if self.descriptor.kind == "C":
            return AlgebraElement(self.descriptor, np.conj(self.data.T))
        x1, x2 = self.data
        # conj(X1 + X2 j)^T = conj(X1)^T - X2^T j
        return AlgebraElement(self.descriptor, np.stack([np.conj(x1.T), -x2.T]))

    def norm(self) -> float:
        """Frobenius norm over the ground field (quaternionic: all 4 parts)."""
        return float(np.linalg.norm(self.data))

    def embed(self) -> np.ndarray:
        """Ground-field matrix: itself for R/C, chi(X) (2n x 2n complex) for H."""
        if self.descriptor.kind in ("R", "C"):
            return np.asarray(self.data)
        x1, x2 = self.data
        return np.block([[x1, x2], [-np.conj(x2), np.conj(x1)]])

    def inv(self) -> "AlgebraElement":
        if not is_invertible(self):
            raise NotInvertible("element is singular at tolerance")
        w = np.linalg.inv(self.embed())
        return lift(self.descriptor, w)

    def trace_real(self) -> float:
        """Real part of the trace (equals trace of the symmetrized element)."""
        if self.descriptor.kind == "R":
            return float(np.trace(self.data))
        if self.descriptor.kind == "C":
            return float(np.real(np.trace(self.data)))
        return float(np.real(np.trace(self.data[0])))

    # -- serialization ---------------------------------------------------

    def to_data(self) -> list:
        """Row-major nested lists; complex entries as [re, im], quaternion
        entries as [w, x, y, z]."""
        n = self.descriptor.n
        if self.descriptor.kind == "R":
            return [[float(v) for v in row] for row in self.data]
        if self.descriptor.kind == "C":
            return [
                [[float(v.real), float(v.imag)] for v in row] for row in self.data
            ]
        x1, x2 = self.data
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(
                    [
                        float(x1[i, j].real),
                        float(x1[i, j].imag),
                        float(x2[i, j].real),
                        float(x2[i, j].imag),
                    ]
                )
            out.append(row)
        return out

    @classmethod
    def from_data(cls, descriptor: AlgebraDescriptor, obj) -> "AlgebraElement":
        n = descriptor.n
        if descriptor.kind == "R":
            return cls(descriptor, np.asarray(obj, dtype=np.float64))
        arr = np.asarray(obj, dtype=np.float64)
        if descriptor.kind == "C":
            if arr.shape != (n, n, 2):
                raise ValueError(f"complex matrix payload must be {n}x{n}x2")
            return cls(descriptor, arr[..., 0] + 1j * arr[..., 1])
        if arr.shape != (n, n, 4):
            raise ValueError(f"quaternion matrix payload must be {n}x{n}x4")
        x1 = arr[..., 0] + 1j * arr[..., 1]
        x2 = arr[..., 2] + 1j * arr[..., 3]
        return cls(descriptor, np.stack([x1, x2]))

    def __repr__(self):
        d = self.descriptor
        return f"AlgebraElement({d.kind}, n={d.n}, norm={self.norm():.4g})"


# -- constructors ---------------------------------------------------------


def zeros(descriptor: AlgebraDescriptor) -> AlgebraElement:
    n = descriptor.n
    if descriptor.kind == "R":
        return AlgebraElement(descriptor, np.zeros((n, n)))
    if descriptor.kind == "C":
        return AlgebraElement(descriptor, np.zeros((n, n), dtype=complex))
    return AlgebraElement(descriptor, np.zeros((2, n, n), dtype=complex))


def identity(descriptor: AlgebraDescriptor) -> AlgebraElement:
    return scalar(descriptor, 1.0)


def scalar(descriptor: AlgebraDescriptor, t: float) -> AlgebraElement:
    """The element t * 1 for real t."""
    n = descriptor.n
    eye = np.eye(n)
    if descriptor.kind == "R":
        return AlgebraElement(descriptor, float(t) * eye)
    if descriptor.kind == "C":
        return AlgebraElement(descriptor, float(t) * eye.astype(complex))
    x = np.zeros((2, n, n), dtype=complex)
    x[0] = float(t) * eye
    return AlgebraElement(descriptor, x)


def lift(descriptor: AlgebraDescriptor, w: np.ndarray) -> AlgebraElement:
    """Inverse of ``embed``.

    For the quaternionic kind the input is projected back onto the image of
    chi; inputs produced by structure-preserving operations (inverse,
    square root, exponential of embedded elements) sit on that subspace up
    to roundoff.
    """
    if descriptor.kind == "R":
        return AlgebraElement(descriptor, np.real(w))
    if descriptor.kind == "C":
        return AlgebraElement(descriptor, w)
    n = descriptor.n
    x1 = (w[:n, :n] + np.conj(w[n:, n:])) / 2.0
    x2 = (w[:n, n:] - np.conj(w[n:, :n])) / 2.0
    return AlgebraElement(descriptor, np.stack([x1, x2]))


# -- predicates -----------------------------------------------------------


def distance(a: AlgebraElement, b: AlgebraElement) -> float:
    _check_same(a, b)
    return float(np.linalg.norm(a.data - b.data))


def sigma(a: AlgebraElement) -> AlgebraElement:
    return a.sigma()


def is_symmetric(a: AlgebraElement) -> bool:
    """sigma(a) = a up to tol * ||a|| (zero counts as symmetric)."""
    nrm = a.norm()
    if nrm == 0:
        return True
    return distance(a, a.sigma()) <= a.descriptor.tol * nrm


def is_antisymmetric(a: AlgebraElement) -> bool:
    if a.norm() == 0:
        return True
    return distance(a, -a.sigma()) <= a.descriptor.tol * a.norm()


def is_invertible(a: AlgebraElement) -> bool:
    nrm = a.norm()
    if nrm == 0:
        return False
    smin = np.linalg.svd(a.embed(), compute_uv=False)[-1]
    return bool(smin > a.descriptor.tol * nrm)


def symmetrized_eigenvalues(a: AlgebraElement) -> np.ndarray:
    """Ascending eigenvalues of the self-adjoint part, via the complex
    embedding.  Quaternionic spectra come back doubled, which is harmless
    for every positivity or spectrum-comparison use below."""
    w = a.embed()
    h = (w + np.conj(w.T)) / 2.0
    return np.linalg.eigvalsh(h)


def is_positive(a: AlgebraElement) -> bool:
    """Membership in the open cone of positive symmetric elements.

    True iff a is symmetric at tolerance and every eigenvalue of the
    symmetrized element exceeds tol * ||a||.
    """
    nrm = a.norm()
    if nrm == 0:
        return False
    if distance(a, a.sigma()) > a.descriptor.tol * nrm:
        return False
    evals = symmetrized_eigenvalues(a)
    return bool(evals[0] > a.descriptor.tol * nrm)


def sqrt_positive(a: AlgebraElement) -> AlgebraElement:
    """Principal square root of a positive element.

    Computed spectrally on the symmetrized embedding; the result is again
    positive and squares back to a within roundoff.
    """
    if not is_positive(a):
        raise NotPositive("sqrt_positive needs a positive-definite symmetric element")
    w = a.embed()
    h = (w + np.conj(w.T)) / 2.0
    evals, vecs = np.linalg.eigh(h)
    root = (vecs * np.sqrt(evals)) @ np.conj(vecs.T)
    return lift(a.descriptor, root)


def polar_decompose(a: AlgebraElement):
    """Factor an invertible a as u * b with u unitary and b positive.

    Computed from the singular value decomposition of the embedding
    (u = WV*, b = V diag(s) V*), which keeps the unitary factor exactly
    unitary even when sigma(a) a is too ill conditioned to pass the
    relative positivity gate of sqrt_positive.  The pair is unique.
    """
    if not is_invertible(a):
        raise NotInvertible("polar factorization needs an invertible element")
    w, s, vh = np.linalg.svd(a.embed())
    u = lift(a.descriptor, w @ vh)
    b = lift(a.descriptor, (np.conj(vh.T) * s) @ vh)
    if not is_unitary(u):
        raise NotUnitary("polar unitary factor drifted off the unitary group")
    return u, b


def is_unitary(a: AlgebraElement) -> bool:
    one = identity(a.descriptor)
    return distance(a.sigma() * a, one) <= a.descriptor.tol * max(1.0, a.norm() ** 2)


def unitary_component_label(u: AlgebraElement) -> int:
    """Connected-component label of the unitary group.

    O(n) has two components told apart by sign(det); U(n) and Sp(n) are
    connected, labelled 0.
    """
    if not is_unitary(u):
        raise NotUnitary("component label only defined for unitary elements")
    if u.descriptor.kind != "R":
        return 0
    sign, _ = np.linalg.slogdet(u.data)
    return int(sign)


# -- sampling -------------------------------------------------------------


def _raw(descriptor: AlgebraDescriptor, rng) -> AlgebraElement:
    n = descriptor.n
    if descriptor.kind == "R":
        return AlgebraElement(descriptor, rng.standard_normal((n, n)))
    if descriptor.kind == "C":
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        return AlgebraElement(descriptor, z / np.sqrt(2.0))
    z = rng.standard_normal((4, n, n))
    x1 = z[0] + 1j * z[1]
    x2 = z[2] + 1j * z[3]
    return AlgebraElement(descriptor, np.stack([x1, x2]) / 2.0)


def sample(descriptor: AlgebraDescriptor, which: str, seed) -> AlgebraElement:
    """Seed-deterministic random element.

    which: "invertible" | "symmetric" | "positive" | "unitary".
    Positive elements are built as g sigma(g) + eps with eps a tenth of the
    mean eigenvalue, so they sit well inside the cone; unitaries are polar
    parts of invertible samples, which for the real kind hits both
    components of O(n).
    """
    rng = np.random.default_rng(seed)
    if which == "symmetric":
        g = _raw(descriptor, rng)
        return 0.5 * (g + g.sigma())
    # the remaining draws start from an invertible sample
    for _ in range(64):
        g = _raw(descriptor, rng)
        if is_invertible(g):
            break
    else:  # pragma: no cover - standard normal matrices are a.s. invertible
        raise NotInvertible("could not draw an invertible sample")
    if which == "invertible":
        return g
    if which == "positive":
        p = g * g.sigma()
        eps = 0.1 * p.trace_real() / descriptor.n
        return p + scalar(descriptor, eps)
    if which == "unitary":
        u, _ = polar_decompose(g)
        return u
    raise ValueError(f"unknown sample request {which!r}")
