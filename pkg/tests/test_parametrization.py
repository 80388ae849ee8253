import networkx as nx
import numpy as np
import pytest

import sp2herm.algebra as al
from sp2herm.algebra import AlgebraDescriptor
from sp2herm.errors import (
    DescriptorMismatch,
    NotMaximal,
    NotPositive,
    NotTransverse,
    NotUnitary,
    UnknownGenerator,
)
from sp2herm.lines import IsotropicLine, act, canonical_spectrum, is_maximal_triple
from sp2herm.parametrization import (
    CoordinateVector,
    FramedRepresentation,
    component_label,
    count_components,
    edge_matrix,
    extract,
    holonomy,
    maximality_margin,
    pairing_matrix,
    sample_coordinates,
    synthesize,
    transport,
    turn_matrix,
    verify_adapted,
    verify_closure,
    verify_equivariance,
    verify_maximal,
)
from sp2herm.surfaces import build_gamma, build_polygon, bundled_surface
from sp2herm.symplectic import SymplecticElement, sample_ksp2, sample_sp2

KINDS = ("R", "C", "H")

FOLDED_PENTAGON = (
    [["0", "1", "2"], ["0", "2", "3"], ["0", "3", "4"]],
    [[[0, 0], [0, 1]], [[1, 1], [2, 1]]],
)


def test_turn_cycles_the_standard_triple():
    for kind in KINDS:
        d = AlgebraDescriptor(kind, 2)
        t = turn_matrix(d)
        lp, lm, l1 = (
            IsotropicLine.ell_plus(d),
            IsotropicLine.ell_minus(d),
            IsotropicLine.ell_one(d),
        )
        assert act(t, lm).distance(lp) < 1e-12
        assert act(t, lp).distance(l1) < 1e-12
        assert act(t, l1).distance(lm) < 1e-12


def test_edge_matrix_swaps_and_exchanges():
    for kind in KINDS:
        d = AlgebraDescriptor(kind, 2)
        a = al.sample(d, "positive", 7)
        e = edge_matrix(a)
        lp, lm, l1 = (
            IsotropicLine.ell_plus(d),
            IsotropicLine.ell_minus(d),
            IsotropicLine.ell_one(d),
        )
        la = IsotropicLine.ell_of(a)
        assert act(e, lp).distance(lm) < 1e-10
        assert act(e, lm).distance(lp) < 1e-10
        assert act(e, l1).distance(la) < 1e-10
        assert act(e, la).distance(l1) < 1e-10


def test_pairing_matrix_generalizes_edge_matrix():
    for kind in KINDS:
        d = AlgebraDescriptor(kind, 3)
        a = al.sample(d, "positive", 3)
        q = al.sqrt_positive(a).inv()
        lhs = pairing_matrix(al.identity(d), q)
        assert lhs.distance(edge_matrix(a)) < 1e-10 * max(1.0, lhs.norm())
        u = al.sample(d, "unitary", 5)
        b = al.sample(d, "positive", 6)
        assert pairing_matrix(u, b).norm() > 0  # membership checked eagerly


def test_pairing_matrix_rejects_bad_slots():
    d = AlgebraDescriptor("R", 2)
    u = al.sample(d, "unitary", 1)
    b = al.sample(d, "positive", 2)
    with pytest.raises(NotPositive):
        pairing_matrix(u, al.scalar(d, -1.0))
    with pytest.raises(NotUnitary):
        pairing_matrix(al.scalar(d, 2.0), b)


def test_coordinate_sampling_and_serialization():
    poly = bundled_surface("punctured_torus")
    for kind in KINDS:
        d = AlgebraDescriptor(kind, 2)
        c1 = sample_coordinates(poly, d, seed=4)
        c2 = sample_coordinates(poly, d, seed=4)
        assert c1.distance(c2) == 0.0
        assert set(c1.b) == set(poly.internal_edge_ids)
        assert set(c1.u) == set(poly.pairing_ids)
        back = CoordinateVector.from_data(c1.to_data())
        assert c1.distance(back) < 1e-14


def test_coordinates_must_match_the_polygon():
    torus = bundled_surface("punctured_torus")
    quad = bundled_surface("quadrilateral")
    coords = sample_coordinates(torus, AlgebraDescriptor("R", 2), seed=0)
    with pytest.raises(DescriptorMismatch):
        synthesize(quad, coords)


@pytest.mark.parametrize("name", ["punctured_torus", "sphere_four_punctures"])
@pytest.mark.parametrize("kind", KINDS)
def test_synthesis_is_adapted_equivariant_and_maximal(name, kind):
    poly = bundled_surface(name)
    d = AlgebraDescriptor(kind, 2)
    coords = sample_coordinates(poly, d, seed=11)
    ls, fr = synthesize(poly, coords)
    assert verify_closure(ls, coords) < 1e-10
    assert verify_adapted(ls, fr) < 1e-9
    assert verify_equivariance(fr) < 1e-9
    assert verify_maximal(fr)
    assert maximality_margin(fr) > 1e-4


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip_on_the_torus(kind):
    poly = bundled_surface("punctured_torus")
    d = AlgebraDescriptor(kind, 2)
    for seed in range(3):
        coords = sample_coordinates(poly, d, seed=seed)
        _, fr = synthesize(poly, coords)
        back = extract(fr)
        assert coords.distance(back) < 1e-9
        # extracting the synthesis of the extraction changes nothing
        _, fr2 = synthesize(poly, back)
        assert back.distance(extract(fr2)) < 1e-9


def test_round_trip_on_the_folded_pentagon():
    poly = build_polygon(*FOLDED_PENTAGON)
    d = AlgebraDescriptor("R", 2)
    coords = sample_coordinates(poly, d, seed=2)
    ls, fr = synthesize(poly, coords)
    assert verify_adapted(ls, fr) < 1e-9
    assert verify_equivariance(fr) < 1e-9
    assert coords.distance(extract(fr)) < 1e-9


@pytest.mark.parametrize("kind", KINDS)
def test_conjugating_the_representation_conjugates_the_coordinates(kind):
    # the classifying data is the coordinate vector up to one unitary
    # conjugating every slot at once, so a global symplectic conjugation
    # must preserve slot spectra and component labels
    poly = bundled_surface("punctured_torus")
    d = AlgebraDescriptor(kind, 2)
    coords = sample_coordinates(poly, d, seed=6)
    _, fr = synthesize(poly, coords)
    for g in (sample_sp2(d, seed=9, length=3), sample_ksp2(d, seed=10)):
        moved = extract(fr.conjugate(g))
        for key in coords.b:
            np.testing.assert_allclose(
                canonical_spectrum(moved.b[key]),
                canonical_spectrum(coords.b[key]),
                rtol=1e-6,
                atol=1e-8,
            )
        assert component_label(moved) == component_label(coords)


def test_explicit_unitary_conjugation_of_coordinates():
    poly = bundled_surface("punctured_torus")
    d = AlgebraDescriptor("R", 2)
    coords = sample_coordinates(poly, d, seed=13)
    w = al.sample(d, "unitary", 3)
    moved = coords.conjugate(w)
    for key in coords.b:
        np.testing.assert_allclose(
            canonical_spectrum(moved.b[key]),
            canonical_spectrum(coords.b[key]),
            rtol=1e-8,
            atol=1e-10,
        )
    # both vectors synthesize to conjugate representations: same holonomy
    # spectra in the flattened picture
    _, fr1 = synthesize(poly, coords)
    _, fr2 = synthesize(poly, moved)
    from sp2herm.realizations import embed_symplectic

    for pid in poly.pairing_ids:
        s1 = np.sort_complex(np.linalg.eigvals(embed_symplectic(fr1.rho[pid])))
        s2 = np.sort_complex(np.linalg.eigvals(embed_symplectic(fr2.rho[pid])))
        np.testing.assert_allclose(s1, s2, rtol=1e-7, atol=1e-9)


def test_extraction_base_independence_up_to_conjugation():
    poly = bundled_surface("genus2_one_puncture")
    d = AlgebraDescriptor("R", 2)
    coords = sample_coordinates(poly, d, seed=1)
    _, fr = synthesize(poly, coords)
    other = extract(fr, base=3)
    for key in coords.b:
        np.testing.assert_allclose(
            canonical_spectrum(other.b[key]),
            canonical_spectrum(coords.b[key]),
            rtol=1e-6,
            atol=1e-8,
        )
    assert component_label(other) == component_label(coords)


@pytest.mark.parametrize("kind", KINDS)
def test_holonomy_is_a_homomorphism(kind):
    poly = bundled_surface("genus2_one_puncture")
    d = AlgebraDescriptor(kind, 2)
    coords = sample_coordinates(poly, d, seed=3)
    _, fr = synthesize(poly, coords)
    rng = np.random.default_rng(0)
    gens = list(poly.pairing_ids)
    for _ in range(4):
        w1 = [(rng.choice(gens), int(rng.choice([-1, 1]))) for _ in range(6)]
        w2 = [(rng.choice(gens), int(rng.choice([-1, 1]))) for _ in range(6)]
        lhs = holonomy(fr, w1 + w2)
        rhs = holonomy(fr, w1) * holonomy(fr, w2)
        assert lhs.distance(rhs) < 1e-8 * max(1.0, rhs.norm())
    g = holonomy(fr, ["g0", ("g0", -1)])
    assert g.distance(SymplecticElement.identity(d)) < 1e-10
    with pytest.raises(UnknownGenerator):
        holonomy(fr, ["nope"])


def test_transport_is_path_independent():
    # the structural local system has trivial cycle holonomy, so any two
    # vertex paths with the same endpoints transport identically; second
    # paths found with networkx
    poly = bundled_surface("punctured_torus")
    gamma = build_gamma(poly)
    d = AlgebraDescriptor("R", 2)
    coords = sample_coordinates(poly, d, seed=8)
    g = nx.Graph()
    for i, j, _, _ in gamma.edges:
        g.add_edge(i, j)
    checked = 0
    for v in range(gamma.n_vertices):
        for w in range(v + 1, gamma.n_vertices):
            paths = []
            for path in nx.shortest_simple_paths(g, v, w):
                paths.append(path)
                if len(paths) == 2:
                    break
            if len(paths) < 2:
                continue
            t1 = transport(gamma, coords, paths[0])
            t2 = transport(gamma, coords, paths[1])
            assert t1.distance(t2) < 1e-9 * max(1.0, t1.norm())
            checked += 1
    assert checked > 3


def test_component_counts_and_labels():
    torus = bundled_surface("punctured_torus")
    sphere4 = bundled_surface("sphere_four_punctures")
    genus2 = bundled_surface("genus2_one_puncture")
    assert count_components(torus.descriptor, AlgebraDescriptor("R", 2)) == 4
    assert count_components(torus.descriptor, AlgebraDescriptor("C", 2)) == 1
    assert count_components(torus.descriptor, AlgebraDescriptor("H", 2)) == 1
    assert count_components(sphere4.descriptor, AlgebraDescriptor("R", 3)) == 8
    assert count_components(genus2.descriptor, AlgebraDescriptor("R", 1)) == 16
    d = AlgebraDescriptor("R", 2)
    labels = {
        component_label(sample_coordinates(torus, d, seed=s)) for s in range(60)
    }
    assert labels == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    dh = AlgebraDescriptor("H", 2)
    labels_h = {
        component_label(sample_coordinates(torus, dh, seed=s)) for s in range(10)
    }
    assert len(labels_h) == 1


def test_label_is_constant_under_unitary_conjugation():
    poly = bundled_surface("sphere_four_punctures")
    d = AlgebraDescriptor("R", 3)
    coords = sample_coordinates(poly, d, seed=19)
    w = al.sample(d, "unitary", 23)
    assert component_label(coords.conjugate(w)) == component_label(coords)


def test_representation_serialization_round_trip():
    poly = bundled_surface("punctured_torus")
    d = AlgebraDescriptor("C", 2)
    coords = sample_coordinates(poly, d, seed=14)
    _, fr = synthesize(poly, coords)
    back = FramedRepresentation.from_data(poly, fr.to_data())
    assert coords.distance(extract(back)) < 1e-9
    for pid in poly.pairing_ids:
        assert fr.rho[pid].distance(back.rho[pid]) < 1e-12


def test_extract_rejects_broken_framing():
    poly = bundled_surface("punctured_torus")
    d = AlgebraDescriptor("R", 2)
    coords = sample_coordinates(poly, d, seed=5)
    _, fr = synthesize(poly, coords)
    lines = dict(fr.lines)
    # collapse two distinct framing lines of the base triangle: no longer
    # transverse, extraction must refuse
    c0 = poly.side_corners(0, 0)[0]
    c1 = poly.side_corners(0, 1)[0]
    lines[c1] = lines[c0]
    broken = FramedRepresentation(poly, d, dict(fr.rho), lines)
    with pytest.raises((NotTransverse, NotMaximal)):
        extract(broken)
    assert not verify_maximal(broken)
    assert maximality_margin(broken) == float("-inf")
