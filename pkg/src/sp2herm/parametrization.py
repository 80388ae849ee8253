"""Coordinates for maximal framed representations of punctured surfaces.

Given a triangulated polygon with pairings and an involutive algebra, a
coordinate vector assigns a positive element b_r to every internal edge
(diagonal or pairing class) and a unitary u_e to every pairing.  Synthesis
propagates a gauge T over the corner graph, using the order-three turn
matrix inside triangles and the edge matrix of b_r across diagonals, then
equips every polygon corner with an isotropic line and every pairing with
a holonomy generator

    rho(gamma_e) = T(w*)^-1 pairing_matrix(u_e, sqrt(b_e)^-1) T(v*).

All triangle corner triples of the resulting framing are maximal.
Extraction inverts the construction: it normalizes the base triple, reads
each diagonal coordinate off the left corner line, splits each pairing
transport polynomially into unitary and positive parts, and returns the
coordinate vector.  Up to conjugating the coordinates by a single unitary,
synthesis and extraction are mutually inverse.

Connected components of the space of such representations are counted by
the unitary group's component labels, one per pairing.
"""

from __future__ import annotations

import numpy as np

from . import algebra as al
from .algebra import AlgebraDescriptor, AlgebraElement
from .errors import (
    CycleClosureFailure,
    DescriptorMismatch,
    NotAdapted,
    NotInvertible,
    NotMaximal,
    NotPositive,
    NotTransverse,
    NotUnitary,
    UnknownGenerator,
)
from .lines import IsotropicLine, act, is_maximal_triple, is_transverse, normalize_triple, triple_invariant
from .surfaces import FundamentalPolygon, GammaGraph, SurfaceDescriptor, build_gamma, surface_stats
from .symplectic import SymplecticElement

CLOSURE_SLACK = 100.0  # cycle-closure threshold, in units of descriptor tol


# -- elementary transition matrices -----------------------------------------


def turn_matrix(descriptor: AlgebraDescriptor) -> SymplecticElement:
    """[[-1, 1], [-1, 0]]: order three, cycles ell_minus -> ell_plus ->
    ell_one -> ell_minus."""
    one = al.identity(descriptor)
    zero = al.zeros(descriptor)
    return SymplecticElement(-1 * one, one, -1 * one, zero)


def edge_matrix(a: AlgebraElement) -> SymplecticElement:
    """[[0, sqrt(a)^-1], [-sqrt(a), 0]] for positive a.

    Swaps ell_plus and ell_minus, exchanges ell_one with ell(a), and
    squares to -Id.
    """
    s = al.sqrt_positive(a)
    zero = al.zeros(a.descriptor)
    return SymplecticElement(zero, s.inv(), -s, zero)


def pairing_matrix(u: AlgebraElement, b: AlgebraElement) -> SymplecticElement:
    """diag(u b, u b^-1) * Omega for unitary u and positive b.

    pairing_matrix(1, sqrt(a)^-1) equals edge_matrix(a), so pairing
    transport generalizes diagonal crossing.
    """
    if not al.is_unitary(u):
        raise NotUnitary("pairing matrix needs a unitary first slot")
    if not al.is_positive(b):
        raise NotPositive("pairing matrix needs a positive second slot")
    x = u * b
    zero = al.zeros(x.descriptor)
    return SymplecticElement(zero, x, -(x.sigma().inv()), zero)


# -- coordinate vectors ------------------------------------------------------


class CoordinateVector:
    """Positive element per internal edge, unitary per pairing."""

    __slots__ = ("descriptor", "b", "u")

    def __init__(self, descriptor: AlgebraDescriptor, b: dict, u: dict):
        for key, val in b.items():
            if not descriptor.compatible(val.descriptor):
                raise DescriptorMismatch(f"b[{key}] over a different algebra")
            if not al.is_positive(val):
                raise NotPositive(f"coordinate b[{key}] must be positive definite")
        for key, val in u.items():
            if not descriptor.compatible(val.descriptor):
                raise DescriptorMismatch(f"u[{key}] over a different algebra")
            if not al.is_unitary(val):
                raise NotUnitary(f"coordinate u[{key}] must be unitary")
        if not set(u).issubset(set(b)):
            raise DescriptorMismatch("every pairing needs a b coordinate")
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "b", dict(b))
        object.__setattr__(self, "u", dict(u))

    def __setattr__(self, name, value):
        raise AttributeError("CoordinateVector is immutable")

    def distance(self, other: "CoordinateVector") -> float:
        if set(self.b) != set(other.b) or set(self.u) != set(other.u):
            raise DescriptorMismatch("coordinate domains differ")
        worst = 0.0
        for key in self.b:
            worst = max(worst, al.distance(self.b[key], other.b[key]))
        for key in self.u:
            worst = max(worst, al.distance(self.u[key], other.u[key]))
        return worst

    def conjugate(self, w: AlgebraElement) -> "CoordinateVector":
        """Slotwise w x w^-1 for unitary w (the residual gauge action)."""
        if not al.is_unitary(w):
            raise NotUnitary("coordinates are only conjugated by unitaries")
        wi = w.inv()
        return CoordinateVector(
            self.descriptor,
            {k: w * v * wi for k, v in self.b.items()},
            {k: w * v * wi for k, v in self.u.items()},
        )

    def to_data(self) -> dict:
        return {
            "algebra": self.descriptor.to_data(),
            "b": {k: v.to_data() for k, v in sorted(self.b.items())},
            "u": {k: v.to_data() for k, v in sorted(self.u.items())},
        }

    @classmethod
    def from_data(cls, obj: dict, tol: float = 1e-8) -> "CoordinateVector":
        desc = AlgebraDescriptor.from_data(obj["algebra"], tol=tol)
        b = {k: AlgebraElement.from_data(desc, v) for k, v in obj["b"].items()}
        u = {k: AlgebraElement.from_data(desc, v) for k, v in obj["u"].items()}
        return cls(desc, b, u)

    def __repr__(self):
        d = self.descriptor
        return f"CoordinateVector({d.kind}, n={d.n}, {len(self.b)} edges, {len(self.u)} pairings)"


def _check_domains(polygon: FundamentalPolygon, coords: CoordinateVector):
    if set(coords.b) != set(polygon.internal_edge_ids):
        raise DescriptorMismatch(
            f"b domain {sorted(coords.b)} does not match internal edges "
            f"{sorted(polygon.internal_edge_ids)}"
        )
    if set(coords.u) != set(polygon.pairing_ids):
        raise DescriptorMismatch(
            f"u domain {sorted(coords.u)} does not match pairings "
            f"{sorted(polygon.pairing_ids)}"
        )


def sample_coordinates(
    polygon: FundamentalPolygon, descriptor: AlgebraDescriptor, seed
) -> CoordinateVector:
    """Seed-deterministic random coordinates for a polygon."""
    rng = np.random.default_rng(seed)
    b = {
        key: al.sample(descriptor, "positive", rng.integers(0, 2**32))
        for key in polygon.internal_edge_ids
    }
    u = {
        key: al.sample(descriptor, "unitary", rng.integers(0, 2**32))
        for key in polygon.pairing_ids
    }
    return CoordinateVector(descriptor, b, u)


# -- local systems and framed representations -------------------------------


class LocalSystem:
    """Symplectic gauge on the corner graph; edge transport is
    T(w <- v) = T(w) T(v)^-1, trivial around every cycle by construction."""

    __slots__ = ("gamma", "gauges", "base")

    def __init__(self, gamma: GammaGraph, gauges, base: int):
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "gauges", tuple(gauges))
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("LocalSystem is immutable")

    def gauge(self, v: int) -> SymplecticElement:
        return self.gauges[v]

    def edge(self, v: int, w: int) -> SymplecticElement:
        return self.gauges[w] * self.gauges[v].inverse()


class FramedRepresentation:
    """Holonomy generators per pairing plus one isotropic line per polygon
    corner (lines at paired corners are related by the generators)."""

    __slots__ = ("polygon", "descriptor", "rho", "lines")

    def __init__(self, polygon, descriptor, rho: dict, lines: dict):
        if set(rho) != set(polygon.pairing_ids):
            raise DescriptorMismatch("rho domain does not match the pairings")
        if set(lines) != set(polygon.corners()):
            raise DescriptorMismatch("framing domain does not match the corners")
        object.__setattr__(self, "polygon", polygon)
        object.__setattr__(self, "descriptor", descriptor)
        object.__setattr__(self, "rho", dict(rho))
        object.__setattr__(self, "lines", dict(lines))

    def __setattr__(self, name, value):
        raise AttributeError("FramedRepresentation is immutable")

    def conjugate(self, g: SymplecticElement) -> "FramedRepresentation":
        """Global conjugation: rho -> g rho g^-1, lines -> g(lines)."""
        gi = g.inverse()
        return FramedRepresentation(
            self.polygon,
            self.descriptor,
            {k: g * v * gi for k, v in self.rho.items()},
            {k: act(g, v) for k, v in self.lines.items()},
        )

    def to_data(self) -> dict:
        return {
            "algebra": self.descriptor.to_data(),
            "generators": {k: v.to_data() for k, v in sorted(self.rho.items())},
            "framing": {k: v.to_data() for k, v in sorted(self.lines.items())},
        }

    @classmethod
    def from_data(cls, polygon: FundamentalPolygon, obj: dict, tol: float = 1e-8) -> "FramedRepresentation":
        desc = AlgebraDescriptor.from_data(obj["algebra"], tol=tol)
        rho = {k: SymplecticElement.from_data(desc, v) for k, v in obj["generators"].items()}
        lines = {k: IsotropicLine.from_data(desc, v) for k, v in obj["framing"].items()}
        return cls(polygon, desc, rho, lines)

    def __repr__(self):
        d = self.descriptor
        return (
            f"FramedRepresentation({d.kind}, n={d.n}, "
            f"{len(self.rho)} generators, {len(self.lines)} framing lines)"
        )


# -- transition matrices on the corner graph ---------------------------------


def _structural(gamma: GammaGraph, coords: CoordinateVector, cache: dict, kind: str, ref):
    if kind == "turn":
        if "turn" not in cache:
            cache["turn"] = turn_matrix(coords.descriptor)
        return cache["turn"]
    key = ("cross", ref)
    if key not in cache:
        cache[key] = edge_matrix(coords.b[f"d{ref}"])
    return cache[key]


def transition(
    gamma: GammaGraph, coords: CoordinateVector, v: int, w: int, _cache: dict | None = None
) -> SymplecticElement:
    """Structural transport along the corner-graph edge from v to w."""
    cache = _cache if _cache is not None else {}
    for j, kind, ref, forward in gamma.adjacency[v]:
        if j == w:
            m = _structural(gamma, coords, cache, kind, ref)
            return m if forward else m.inverse()
    raise UnknownGenerator(f"no corner-graph edge from {v} to {w}")


def transport(gamma: GammaGraph, coords: CoordinateVector, path) -> SymplecticElement:
    """Ordered product of structural transitions along a vertex path."""
    cache: dict = {}
    g = SymplecticElement.identity(coords.descriptor)
    for v, w in zip(path, path[1:]):
        g = transition(gamma, coords, v, w, cache) * g
    return g


# -- synthesis ---------------------------------------------------------------


def synthesize(polygon: FundamentalPolygon, coords: CoordinateVector, base: int = 0):
    """Build the local system and framed representation of a coordinate
    vector.  Returns (LocalSystem, FramedRepresentation)."""
    _check_domains(polygon, coords)
    desc = coords.descriptor
    gamma = build_gamma(polygon)
    cache: dict = {}

    parent, order = gamma.spanning_tree(base)
    gauges: list = [None] * gamma.n_vertices
    gauges[base] = SymplecticElement.identity(desc)
    for v in order[1:]:
        p, kind, ref, forward = parent[v]
        m = _structural(gamma, coords, cache, kind, ref)
        gauges[v] = (m if forward else m.inverse()) * gauges[p]

    # every cycle of the corner graph must close up
    worst = 0.0
    for i, j, kind, ref in gamma.edges:
        m = _structural(gamma, coords, cache, kind, ref)
        resid = gauges[j].distance(m * gauges[i]) / max(1.0, gauges[j].norm())
        worst = max(worst, resid)
    if worst > CLOSURE_SLACK * desc.tol:
        raise CycleClosureFailure(f"cycle closure residual {worst:.3e}")

    ls = LocalSystem(gamma, gauges, base)

    # adapted framing: every corner receives one line, further visits must agree
    lp = IsotropicLine.ell_plus(desc)
    lm = IsotropicLine.ell_minus(desc)
    lo = IsotropicLine.ell_one(desc)
    lines: dict = {}
    drift = 0.0
    for vert in gamma.vertices:
        inv = gauges[vert.index].inverse()
        for corner, std in ((vert.top, lp), (vert.bottom, lm), (vert.right, lo)):
            candidate = act(inv, std)
            if corner in lines:
                drift = max(drift, lines[corner].distance(candidate))
            else:
                lines[corner] = candidate
    if drift > CLOSURE_SLACK * desc.tol:
        raise CycleClosureFailure(f"corner line assignments drift by {drift:.3e}")

    # one holonomy generator per pairing
    rho: dict = {}
    for k, (sa, sb) in enumerate(polygon.pairings):
        v_star = gamma.vertex_index(*sa)
        w_star = gamma.vertex_index(*sb)
        b_e = coords.b[f"g{k}"]
        b_prime = al.sqrt_positive(b_e).inv()
        p_mat = pairing_matrix(coords.u[f"g{k}"], b_prime)
        rho[f"g{k}"] = gauges[w_star].inverse() * p_mat * gauges[v_star]

    return ls, FramedRepresentation(polygon, desc, rho, lines)


# -- verification ------------------------------------------------------------


def verify_closure(ls: LocalSystem, coords: CoordinateVector) -> float:
    """Largest relative cycle-closure residual over the corner-graph edges.

    Zero (within slack) certifies that the gauges define a trivial local
    system for the structural transitions of the coordinate vector."""
    cache: dict = {}
    worst = 0.0
    for i, j, kind, ref in ls.gamma.edges:
        m = _structural(ls.gamma, coords, cache, kind, ref)
        gi, gj = ls.gauge(i), ls.gauge(j)
        worst = max(worst, gj.distance(m * gi) / max(1.0, gj.norm()))
    return worst


def verify_adapted(ls: LocalSystem, fr: FramedRepresentation) -> float:
    """Largest distance of a gauged corner line from its standard position."""
    desc = fr.descriptor
    lp = IsotropicLine.ell_plus(desc)
    lm = IsotropicLine.ell_minus(desc)
    lo = IsotropicLine.ell_one(desc)
    worst = 0.0
    for vert in ls.gamma.vertices:
        g = ls.gauge(vert.index)
        for corner, std in ((vert.top, lp), (vert.bottom, lm), (vert.right, lo)):
            worst = max(worst, act(g, fr.lines[corner]).distance(std))
    return worst


def verify_equivariance(fr: FramedRepresentation) -> float:
    """Largest framing mismatch across a pairing.

    Gluing matches the start corner of one side with the end corner of the
    other, so the generator must carry the start line to the partner's end
    line and vice versa.
    """
    worst = 0.0
    for k, (sa, sb) in enumerate(fr.polygon.pairings):
        g = fr.rho[f"g{k}"]
        a0, a1 = fr.polygon.side_corners(*sa)
        b0, b1 = fr.polygon.side_corners(*sb)
        worst = max(worst, act(g, fr.lines[a1]).distance(fr.lines[b0]))
        worst = max(worst, act(g, fr.lines[a0]).distance(fr.lines[b1]))
    return worst


def verify_maximal(fr: FramedRepresentation) -> bool:
    """Whether every triangle's counterclockwise corner triple is maximal."""
    for tri in fr.polygon.triangles:
        if not is_maximal_triple(*(fr.lines[c] for c in tri)):
            return False
    return True


def maximality_margin(fr: FramedRepresentation) -> float:
    """Smallest normalized eigenvalue over all triangle triple invariants;
    positive iff the framing is maximal."""
    margin = np.inf
    for tri in fr.polygon.triangles:
        try:
            inv = triple_invariant(*(fr.lines[c] for c in tri))
        except NotTransverse:
            return -np.inf
        evals = al.symmetrized_eigenvalues(inv)
        margin = min(margin, float(evals[0]) / max(1.0, float(evals[-1])))
    return float(margin)


# -- holonomy ----------------------------------------------------------------


def _letters(word):
    for letter in word:
        if isinstance(letter, str):
            yield letter, 1
        else:
            pid, exp = letter
            yield str(pid), int(exp)


def holonomy(fr: FramedRepresentation, word) -> SymplecticElement:
    """Product of generators over a word in pairing ids.

    Letters are pairing ids or (id, exponent) pairs; the product follows
    path-composition order, rightmost letter applied first.
    """
    g = SymplecticElement.identity(fr.descriptor)
    for pid, exp in _letters(word):
        if pid not in fr.rho:
            raise UnknownGenerator(f"no pairing generator named {pid!r}")
        if exp == 0:
            continue
        step = fr.rho[pid] if exp > 0 else fr.rho[pid].inverse()
        for _ in range(abs(exp)):
            g = g * step
    return g


# -- extraction --------------------------------------------------------------


def _read_left_invariant(gauge: SymplecticElement, left_line: IsotropicLine) -> AlgebraElement:
    """Diagonal coordinate at a vertex: the gauged left corner line sits at
    ell(a), i.e. (1, -a); read a = -z2 z1^-1 off any representative."""
    z1, z2 = gauge.act(left_line.rep())
    try:
        a = -(z2 * z1.inv())
    except NotInvertible as exc:
        raise NotTransverse("left corner line is not transverse to the far edge") from exc
    a = 0.5 * (a + a.sigma())
    if not al.is_positive(a):
        raise NotMaximal("left corner invariant is not positive definite")
    return a


def extract(fr: FramedRepresentation, base: int = 0) -> CoordinateVector:
    """Read coordinates off a maximal framed representation.

    Inverse to synthesize: extract(synthesize(c)) returns c exactly (up to
    roundoff), and synthesizing extracted coordinates reproduces the
    representation up to global conjugation.
    """
    desc = fr.descriptor
    polygon = fr.polygon
    gamma = build_gamma(polygon)

    for vert in gamma.vertices:
        if not is_transverse(fr.lines[vert.top], fr.lines[vert.bottom]):
            raise NotTransverse(f"framing lines along side {(vert.tri, vert.side)} are not transverse")
    if not verify_maximal(fr):
        raise NotMaximal("framing has a non-maximal triangle triple")

    base_vert = gamma.vertices[base]
    gauges: list = [None] * gamma.n_vertices
    gauges[base] = normalize_triple(
        fr.lines[base_vert.top], fr.lines[base_vert.bottom], fr.lines[base_vert.right]
    )

    # the diagonal invariant is shared by both flags of a crossing edge, so
    # it can always be read on the parent's side, where the gauge is known
    turn = turn_matrix(desc)
    parent, order = gamma.spanning_tree(base)
    for v in order[1:]:
        p, kind, ref, forward = parent[v]
        if kind == "turn":
            m = turn
        else:
            vert = gamma.vertices[p]
            m = edge_matrix(_read_left_invariant(gauges[p], fr.lines[vert.left]))
        gauges[v] = (m if forward else m.inverse()) * gauges[p]

    # canonical diagonal reads from the smaller-triangle side
    b: dict = {}
    for k, (i, j) in enumerate(gamma.crossing_edges):
        vert = gamma.vertices[i]
        b[f"d{k}"] = _read_left_invariant(gauges[i], fr.lines[vert.left])

    # closure audit over all edges
    worst = 0.0
    for i, j, kind, ref in gamma.edges:
        m = turn if kind == "turn" else edge_matrix(b[f"d{ref}"])
        worst = max(worst, gauges[j].distance(m * gauges[i]) / max(1.0, gauges[j].norm()))
    if worst > CLOSURE_SLACK * desc.tol:
        raise CycleClosureFailure(f"extracted gauges fail to close up ({worst:.3e})")

    # pairing transports split into unitary and positive parts
    omega_inv = SymplecticElement.omega(desc).inverse()
    u: dict = {}
    for k, (sa, sb) in enumerate(polygon.pairings):
        v_star = gamma.vertex_index(*sa)
        w_star = gamma.vertex_index(*sb)
        p_mat = gauges[w_star] * fr.rho[f"g{k}"] * gauges[v_star].inverse()
        l_mat = p_mat * omega_inv
        off = max(l_mat.b.norm(), l_mat.c.norm()) / max(1.0, l_mat.norm())
        if off > CLOSURE_SLACK * desc.tol:
            raise NotAdapted(f"pairing g{k} transport is not in gluing form ({off:.3e})")
        x = l_mat.a
        try:
            u_e, p_pos = al.polar_decompose(x)
        except (NotInvertible, NotUnitary) as exc:
            raise NotAdapted(f"pairing g{k} transport does not factor") from exc
        q = p_pos.inv()
        u[f"g{k}"] = u_e
        b[f"g{k}"] = q * q
    return CoordinateVector(desc, b, u)


# -- components --------------------------------------------------------------


def component_label(coords: CoordinateVector) -> tuple:
    """Unitary component label per pairing, in pairing order."""
    keys = sorted(coords.u, key=lambda pid: int(pid[1:]))
    return tuple(al.unitary_component_label(coords.u[k]) for k in keys)


def count_components(surface: SurfaceDescriptor, algebra: AlgebraDescriptor) -> int:
    """Number of connected components of the space of maximal framed
    representations: k^(1 - chi) with k the number of components of the
    unitary group (2 for the real kind, else 1)."""
    stats = surface_stats(surface)
    k = 2 if algebra.kind == "R" else 1
    return k ** stats.pairings
