"""Identification of the block symplectic groups with classical groups.

Flattening the 2x2 blocks over Mat(n, R) gives Sp(2n, R) preserving the
standard alternating form J.  Over Mat(n, C), conjugating the flattening by
T = diag(1, -i) turns the symplectic condition into preservation of the
Hermitian form [[0, 1], [1, 0]] of signature (n, n), so the group is the
pseudo-unitary group U(n, n).  Over Mat(n, H), conjugating by
T = (1/sqrt2) [[1, -j], [-j, 1]] produces an invertible skew-Hermitian
quaternionic form, identifying the group with SO*(4n); the check runs
inside the complex embedding, where the Gram matrix is skew-Hermitian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as al
from .algebra import AlgebraDescriptor
from .errors import SizeMismatch
from .symplectic import SymplecticElement

_LABELS = {"R": "Sp(2n,R)", "C": "U(n,n)", "H": "SO*(4n)"}


def embed_symplectic(m: SymplecticElement) -> np.ndarray:
    """Flatten the 2x2 block element to a ground-field matrix.

    Real and complex kinds give a 2n x 2n matrix over the ground field;
    the quaternionic kind flattens to 2n x 2n over H and returns its
    4n x 4n complex embedding.  The map is multiplicative.
    """
    if m.descriptor.kind in ("R", "C"):
        return np.block(
            [[m.a.data, m.b.data], [m.c.data, m.d.data]]
        )
    q1 = np.block([[m.a.data[0], m.b.data[0]], [m.c.data[0], m.d.data[0]]])
    q2 = np.block([[m.a.data[1], m.b.data[1]], [m.c.data[1], m.d.data[1]]])
    return np.block([[q1, q2], [-np.conj(q2), np.conj(q1)]])


@dataclass(frozen=True)
class ClassicalForm:
    """Gram matrix and basis change realizing the group classically."""

    descriptor: AlgebraDescriptor
    label: str
    gram: np.ndarray
    basis_change: np.ndarray

    @property
    def size(self) -> int:
        return self.gram.shape[0]


def classical_form(descriptor: AlgebraDescriptor) -> ClassicalForm:
    """The preserved form for the descriptor's kind, with its basis change."""
    n = descriptor.n
    eye = np.eye(n)
    j_mat = np.block([[np.zeros((n, n)), eye], [-eye, np.zeros((n, n))]])
    if descriptor.kind == "R":
        t = np.eye(2 * n)
        gram = j_mat
    elif descriptor.kind == "C":
        t = np.block(
            [[eye, np.zeros((n, n))], [np.zeros((n, n)), -1j * eye]]
        ).astype(complex)
        gram = 1j * np.conj(t.T) @ j_mat.astype(complex) @ t
    else:
        # T = (1/sqrt2) [[1, -j], [-j, 1]] over H, then complex-embedded
        zero = np.zeros((2 * n, 2 * n))
        q1 = np.eye(2 * n) / np.sqrt(2.0)
        q2 = np.block([[np.zeros((n, n)), -eye], [-eye, np.zeros((n, n))]]) / np.sqrt(2.0)
        t = np.block([[q1, q2], [-np.conj(q2), np.conj(q1)]]).astype(complex)
        omega_q = np.block([[j_mat, zero], [zero, j_mat]]).astype(complex)
        gram = np.conj(t.T) @ omega_q @ t
    _validate_gram(descriptor.kind, gram, descriptor.tol)
    return ClassicalForm(descriptor, _LABELS[descriptor.kind], gram, t)


def _validate_gram(kind: str, gram: np.ndarray, tol: float):
    scale = np.linalg.norm(gram)
    if np.linalg.svd(gram, compute_uv=False)[-1] <= tol * scale:
        raise ValueError("classical form is degenerate")
    if kind == "R":
        resid = np.linalg.norm(gram + gram.T)
    elif kind == "C":
        resid = np.linalg.norm(gram - np.conj(gram.T))
    else:
        resid = np.linalg.norm(gram + np.conj(gram.T))
    if resid > tol * scale:
        raise ValueError("classical form has the wrong symmetry type")


def preserves_form(mat: np.ndarray, form: ClassicalForm) -> bool:
    """Whether a flattened matrix preserves the classical form.

    The matrix is first moved to the classical basis by the stored basis
    change; comparison is relative to the matrix and form scales.
    """
    mat = np.asarray(mat)
    if mat.shape != (form.size, form.size):
        raise SizeMismatch(f"expected {form.size} x {form.size} matrix, got {mat.shape}")
    t = form.basis_change
    hat = np.linalg.solve(t, mat.astype(t.dtype) @ t)
    if form.descriptor.kind == "R":
        resid = hat.T @ form.gram @ hat - form.gram
    else:
        resid = np.conj(hat.T) @ form.gram @ hat - form.gram
    scale = np.linalg.norm(form.gram) * max(1.0, np.linalg.norm(hat) ** 2)
    return bool(np.linalg.norm(resid) <= form.descriptor.tol * scale)


def is_compact_matrix(mat: np.ndarray, tol: float = 1e-8) -> bool:
    """Unitarity of a flattened matrix; certifies landing in the compact
    subgroup of the realization."""
    mat = np.asarray(mat)
    resid = np.conj(mat.T) @ mat - np.eye(mat.shape[0])
    return bool(np.linalg.norm(resid) <= tol * max(1.0, np.linalg.norm(mat) ** 2))
