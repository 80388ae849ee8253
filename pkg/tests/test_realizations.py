import numpy as np
import pytest

import sp2herm.algebra as al
from sp2herm.algebra import AlgebraDescriptor
from sp2herm.errors import SizeMismatch
from sp2herm.realizations import (
    classical_form,
    embed_symplectic,
    is_compact_matrix,
    preserves_form,
)
from sp2herm.symplectic import SymplecticElement, sample_ksp2, sample_sp2

KINDS = ("R", "C", "H")


def test_form_shapes_and_labels():
    want = {"R": ("Sp(2n,R)", 4), "C": ("U(n,n)", 4), "H": ("SO*(4n)", 8)}
    for kind, (label, size) in want.items():
        form = classical_form(AlgebraDescriptor(kind, 2))
        assert form.label == label
        assert form.gram.shape == (size, size)
        assert form.basis_change.shape == (size, size)


def test_real_form_is_the_standard_alternating_form():
    form = classical_form(AlgebraDescriptor("R", 2))
    j = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
    np.testing.assert_allclose(form.gram, j)
    np.testing.assert_allclose(form.basis_change, np.eye(4))


def test_complex_form_has_balanced_signature():
    for n in (1, 2, 3):
        form = classical_form(AlgebraDescriptor("C", n))
        ev = np.sort(np.linalg.eigvalsh(form.gram))
        np.testing.assert_allclose(ev, [-1.0] * n + [1.0] * n, atol=1e-12)


def test_quaternionic_form_is_skew_hermitian_and_invertible():
    for n in (1, 2):
        form = classical_form(AlgebraDescriptor("H", n))
        np.testing.assert_allclose(form.gram, -np.conj(form.gram.T), atol=1e-12)
        sv = np.linalg.svd(form.gram, compute_uv=False)
        assert sv[-1] > 0.5
        # basis change is unitary up to scale: columns orthonormal
        t = form.basis_change
        np.testing.assert_allclose(np.conj(t.T) @ t, np.eye(4 * n), atol=1e-12)


@pytest.mark.parametrize("kind", KINDS)
def test_embedding_is_multiplicative_and_faithful(kind):
    d = AlgebraDescriptor(kind, 2)
    g = sample_sp2(d, seed=1)
    h = sample_sp2(d, seed=2)
    lhs = embed_symplectic(g * h)
    rhs = embed_symplectic(g) @ embed_symplectic(h)
    assert np.linalg.norm(lhs - rhs) < 1e-10 * np.linalg.norm(rhs)
    assert np.linalg.norm(embed_symplectic(g) - embed_symplectic(h)) > 1e-3
    e = embed_symplectic(SymplecticElement.identity(d))
    np.testing.assert_allclose(e, np.eye(e.shape[0]), atol=1e-14)


@pytest.mark.parametrize("kind", KINDS)
def test_group_samples_preserve_the_form(kind):
    d = AlgebraDescriptor(kind, 2)
    form = classical_form(d)
    for s in range(25):
        assert preserves_form(embed_symplectic(sample_sp2(d, seed=s)), form)


@pytest.mark.parametrize("kind", KINDS)
def test_perturbed_matrices_fail(kind):
    d = AlgebraDescriptor(kind, 2)
    form = classical_form(d)
    rng = np.random.default_rng(5)
    for s in range(25):
        m = embed_symplectic(sample_sp2(d, seed=s))
        i, j = rng.integers(0, m.shape[0], size=2)
        m[i, j] += 0.05 * max(1.0, abs(m[i, j]))
        assert not preserves_form(m, form)


@pytest.mark.parametrize("kind", KINDS)
def test_compact_subgroup_lands_in_unitaries(kind):
    d = AlgebraDescriptor(kind, 2)
    form = classical_form(d)
    for s in range(10):
        k = embed_symplectic(sample_ksp2(d, seed=s))
        assert is_compact_matrix(k)
        assert preserves_form(k, form)
    g = embed_symplectic(SymplecticElement.diagonal(al.scalar(d, 3.0)))
    assert not is_compact_matrix(g)


def test_size_mismatch_rejected():
    form = classical_form(AlgebraDescriptor("H", 2))
    with pytest.raises(SizeMismatch):
        preserves_form(np.eye(4), form)
