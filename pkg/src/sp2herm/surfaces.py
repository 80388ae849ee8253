"""Triangulated polygons, edge pairings, and the corner graph.

A punctured surface is presented as a triangulated polygon (a disc whose
triangles meet along diagonals) together with orientation-reversing
pairings of boundary sides.  Gluing the paired sides produces the surface;
all polygon corners become punctures.  The combinatorics needed downstream
live here:

* admissibility and edge counts for a surface descriptor,
* validation of the polygon complex (disc check, Euler audit, pairing
  sanity) and derivation of the glued surface's descriptor,
* the corner graph Gamma_0 whose vertices are (triangle, side) flags with
  their four corner labels, in-triangle 3-cycles and one crossing edge per
  diagonal, plus deterministic breadth-first paths.

Nothing here touches the algebra layer; this module is pure combinatorics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    BadPairing,
    DisconnectedDomain,
    EulerMismatch,
    InvalidSurface,
    Unreachable,
)


@dataclass(frozen=True)
class SurfaceDescriptor:
    """Topological type: genus, internal punctures, boundary circles and
    punctures on the boundary."""

    genus: int
    internal_punctures: int
    boundary_components: int
    boundary_punctures: int

    def to_data(self) -> dict:
        return {
            "genus": self.genus,
            "internal_punctures": self.internal_punctures,
            "boundary_components": self.boundary_components,
            "boundary_punctures": self.boundary_punctures,
        }

    @classmethod
    def from_data(cls, obj: dict) -> "SurfaceDescriptor":
        return cls(
            int(obj["genus"]),
            int(obj["internal_punctures"]),
            int(obj["boundary_components"]),
            int(obj["boundary_punctures"]),
        )


class SurfaceStats(NamedTuple):
    chi: int
    triangles: int
    internal_edges: int
    pairings: int


def surface_stats(d: SurfaceDescriptor) -> SurfaceStats:
    """Euler characteristic and triangulation counts for a descriptor.

    Admissible descriptors either have negative Euler characteristic or are
    discs with at least three boundary punctures (ideal polygons).  Every
    ideal triangulation then has 4g - 4 + 2 p_i + 2 m + p_e triangles,
    p_e - 3 chi internal edges after gluing, and 1 - chi pairings.
    """
    g, p_i, m, p_e = (
        d.genus,
        d.internal_punctures,
        d.boundary_components,
        d.boundary_punctures,
    )
    for value, name in ((g, "genus"), (p_i, "internal_punctures"), (m, "boundary_components"), (p_e, "boundary_punctures")):
        if not isinstance(value, int) or value < 0:
            raise InvalidSurface(f"{name} must be a nonnegative integer")
    if p_i + p_e == 0:
        raise InvalidSurface("surface needs at least one puncture")
    if m == 0 and p_e > 0:
        raise InvalidSurface("boundary punctures need boundary components")
    if m > 0 and p_e < m:
        raise InvalidSurface("every boundary circle must carry a puncture")
    chi = 2 - 2 * g - p_i - m
    disc = g == 0 and m == 1 and p_i == 0
    if chi >= 0 and not (disc and p_e >= 3):
        raise InvalidSurface(
            f"descriptor has chi = {chi} >= 0 and is not an ideal polygon"
        )
    triangles = 4 * g - 4 + 2 * p_i + 2 * m + p_e
    return SurfaceStats(chi, triangles, p_e - 3 * chi, 1 - chi)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # keep the lexicographically smaller representative
            lo, hi = sorted((rx, ry))
            self.parent[hi] = lo


class FundamentalPolygon:
    """Validated triangulated polygon with boundary-side pairings.

    triangles: list of corner-id triples, each triangle counterclockwise;
    side s of triangle t runs from corner s to corner s+1 (mod 3).
    pairings: list of pairs of sides [t, s]; gluing reverses boundary
    orientation, so the start corner of one side matches the end corner of
    the other.
    """

    def __init__(self, triangles, pairings):
        tris = []
        for t, tri in enumerate(triangles):
            corners = tuple(str(c) for c in tri)
            if len(corners) != 3 or len(set(corners)) != 3:
                raise EulerMismatch(f"triangle {t} must have three distinct corners")
            tris.append(corners)
        if not tris:
            raise EulerMismatch("polygon needs at least one triangle")
        self.triangles = tuple(tris)
        nt = len(tris)

        incidence: dict = {}
        for t in range(nt):
            for s in range(3):
                key = frozenset(self.side_corners(t, s))
                incidence.setdefault(key, []).append((t, s))

        diagonals = []
        for key, sides in sorted(incidence.items(), key=lambda kv: sorted(kv[1])):
            if len(sides) > 2:
                raise EulerMismatch(f"corner pair {sorted(key)} shared by {len(sides)} sides")
            if len(sides) == 2:
                a, b = sorted(sides)
                if self.side_corners(*a) == self.side_corners(*b):
                    raise EulerMismatch(
                        f"diagonal {sorted(key)} traversed twice in the same direction"
                    )
                diagonals.append((a, b))
        self.diagonals = tuple(diagonals)
        self._diagonal_of_side = {}
        for i, (a, b) in enumerate(diagonals):
            self._diagonal_of_side[a] = i
            self._diagonal_of_side[b] = i

        # the dual graph through diagonals must be a tree: a disc
        if len(diagonals) != nt - 1:
            raise EulerMismatch(
                f"{len(diagonals)} diagonals for {nt} triangles; a polygon needs {nt - 1}"
            )
        adj = {t: [] for t in range(nt)}
        for (ta, _), (tb, _) in diagonals:
            adj[ta].append(tb)
            adj[tb].append(ta)
        seen = {0}
        stack = [0]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != nt:
            raise DisconnectedDomain("triangles do not form a connected polygon")

        # boundary must be one cycle visiting every corner once in each role
        boundary = [
            (t, s)
            for t in range(nt)
            for s in range(3)
            if (t, s) not in self._diagonal_of_side
        ]
        starts, ends = {}, {}
        for side in boundary:
            a, b = self.side_corners(*side)
            if a in starts or b in ends:
                raise EulerMismatch("polygon boundary is not a simple cycle")
            starts[a] = side
            ends[b] = side
        corners = {c for tri in self.triangles for c in tri}
        if set(starts) != corners or set(ends) != corners:
            raise EulerMismatch("polygon has corners off the boundary cycle")
        walk = []
        cursor = min(corners)
        for _ in boundary:
            side = starts[cursor]
            walk.append(side)
            cursor = self.side_corners(*side)[1]
        if len(set(walk)) != len(boundary) or cursor != min(corners):
            raise EulerMismatch("polygon boundary splits into several cycles")

        # pairings: distinct boundary sides, each used once
        boundary_set = set(boundary)
        cleaned = []
        used = set()
        for k, pair in enumerate(pairings):
            (t1, s1), (t2, s2) = pair
            side1, side2 = (int(t1), int(s1)), (int(t2), int(s2))
            for side in (side1, side2):
                if side not in boundary_set:
                    raise BadPairing(f"pairing {k} references non-boundary side {side}")
                if side in used:
                    raise BadPairing(f"pairing {k} reuses side {side}")
                used.add(side)
            if side1 == side2:
                raise BadPairing(f"pairing {k} glues side {side1} to itself")
            cleaned.append((side1, side2))
        self.pairings = tuple(cleaned)
        self._pairing_of_side = {}
        for i, (a, b) in enumerate(cleaned):
            self._pairing_of_side[a] = i
            self._pairing_of_side[b] = i
        self.external_sides = tuple(s for s in boundary if s not in used)

        # glue: start of one side meets end of the other
        uf = _UnionFind(corners)
        for (sa, sb) in cleaned:
            a0, a1 = self.side_corners(*sa)
            b0, b1 = self.side_corners(*sb)
            uf.union(a0, b1)
            uf.union(a1, b0)
        self.corner_orbit = {c: uf.find(c) for c in corners}
        orbits = sorted(set(self.corner_orbit.values()))

        # boundary of the glued surface must be a disjoint union of circles
        degree = {o: 0 for o in orbits}
        buf = _UnionFind(orbits)
        for side in self.external_sides:
            a, b = (self.corner_orbit[c] for c in self.side_corners(*side))
            degree[a] += 1
            degree[b] += 1
            buf.union(a, b)
        if any(deg not in (0, 2) for deg in degree.values()):
            raise EulerMismatch("glued boundary is not a disjoint union of circles")
        boundary_orbits = [o for o in orbits if degree[o] == 2]
        m = len({buf.find(o) for o in boundary_orbits})
        p_e = len(boundary_orbits)
        p_i = len(orbits) - p_e

        n_edges = len(self.diagonals) + len(self.pairings) + len(self.external_sides)
        chi_compact = len(orbits) - n_edges + nt
        genus2, rem = divmod(2 - m - chi_compact, 2)
        if rem != 0 or genus2 < 0:
            raise EulerMismatch(
                f"glued complex has Euler characteristic {chi_compact} with {m} "
                "boundary circles; no orientable surface matches"
            )
        self.descriptor = SurfaceDescriptor(genus2, p_i, m, p_e)
        self.stats = surface_stats(self.descriptor)
        if self.stats.triangles != nt or self.stats.pairings != len(self.pairings):
            raise EulerMismatch(
                f"triangulation counts {nt} triangles / {len(self.pairings)} pairings "
                f"disagree with descriptor {self.descriptor}"
            )
        if self.stats.internal_edges != len(self.diagonals) + len(self.pairings):
            raise EulerMismatch("internal edge count disagrees with descriptor")

    # -- accessors --------------------------------------------------------

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def side_corners(self, t: int, s: int):
        tri = self.triangles[t]
        return tri[s], tri[(s + 1) % 3]

    def third_corner(self, t: int, s: int) -> str:
        return self.triangles[t][(s + 2) % 3]

    @property
    def diagonal_ids(self):
        return tuple(f"d{i}" for i in range(len(self.diagonals)))

    @property
    def pairing_ids(self):
        return tuple(f"g{i}" for i in range(len(self.pairings)))

    @property
    def internal_edge_ids(self):
        return self.diagonal_ids + self.pairing_ids

    def corners(self):
        return sorted({c for tri in self.triangles for c in tri})

    def to_data(self) -> dict:
        return {
            "triangles": [list(tri) for tri in self.triangles],
            "pairings": [[list(a), list(b)] for a, b in self.pairings],
        }

    @classmethod
    def from_data(cls, obj: dict) -> "FundamentalPolygon":
        return cls(obj["triangles"], obj.get("pairings", []))

    def __repr__(self):
        d = self.descriptor
        return (
            f"FundamentalPolygon({self.n_triangles} triangles, "
            f"{len(self.pairings)} pairings, genus {d.genus}, "
            f"{d.internal_punctures}+{d.boundary_punctures} punctures)"
        )


def build_polygon(triangles, pairings) -> FundamentalPolygon:
    return FundamentalPolygon(triangles, pairings)


@dataclass(frozen=True)
class GammaVertex:
    """Flag (triangle, side) with its corner labels.

    top/bottom are the side's start and end corners, right is the third
    corner of the triangle.  left is the third corner across the side: of
    the neighbouring triangle for a diagonal, of the partner triangle for a
    paired side (a label about the glued surface), absent on external sides.
    """

    index: int
    tri: int
    side: int
    top: str
    bottom: str
    right: str
    left: str | None


class GammaGraph:
    """Corner graph of a polygon: 3 vertices per triangle, directed
    in-triangle 3-cycles plus one crossing edge per diagonal."""

    def __init__(self, polygon: FundamentalPolygon):
        self.polygon = polygon
        nt = polygon.n_triangles
        verts = []
        for t in range(nt):
            for s in range(3):
                top, bottom = polygon.side_corners(t, s)
                side = (t, s)
                if side in polygon._diagonal_of_side:
                    a, b = polygon.diagonals[polygon._diagonal_of_side[side]]
                    other = b if side == a else a
                    left = polygon.third_corner(*other)
                elif side in polygon._pairing_of_side:
                    a, b = polygon.pairings[polygon._pairing_of_side[side]]
                    partner = b if side == a else a
                    left = polygon.third_corner(*partner)
                else:
                    left = None
                verts.append(
                    GammaVertex(3 * t + s, t, s, top, bottom, polygon.third_corner(t, s), left)
                )
        self.vertices = tuple(verts)

        edges = []
        for t in range(nt):
            for s in range(3):
                edges.append((3 * t + s, 3 * t + (s + 1) % 3, "turn", None))
        self.crossing_edges = []
        for i, (sa, sb) in enumerate(polygon.diagonals):
            e = (3 * sa[0] + sa[1], 3 * sb[0] + sb[1], "cross", i)
            edges.append(e)
            self.crossing_edges.append((e[0], e[1]))
        self.edges = tuple(edges)

        pairs = {(min(i, j), max(i, j)) for i, j, _, _ in edges}
        if len(pairs) != len(edges):
            raise EulerMismatch("corner graph has a repeated or two-cycle edge")

        adj = {i: [] for i in range(3 * nt)}
        for i, j, kind, ref in edges:
            adj[i].append((j, kind, ref, True))
            adj[j].append((i, kind, ref, False))
        for i in adj:
            adj[i].sort()
        self.adjacency = adj

        if self._bfs_order(0)[-1] is None:
            raise DisconnectedDomain("corner graph is not connected")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, t: int, s: int) -> int:
        return 3 * t + s

    def _bfs_order(self, start: int):
        """Parent map from a breadth-first search; ties broken by vertex
        index via the sorted adjacency lists."""
        parent = {start: (None, None, None, None)}
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for j, kind, ref, forward in self.adjacency[v]:
                if j not in parent:
                    parent[j] = (v, kind, ref, forward)
                    queue.append(j)
        if len(parent) != self.n_vertices:
            return parent, None
        return parent, queue

    def spanning_tree(self, base: int):
        """Parent map of the breadth-first tree rooted at base."""
        parent, order = self._bfs_order(base)
        if order is None:
            raise DisconnectedDomain("corner graph is not connected")
        return parent, order

    def path_between(self, v: int, w: int):
        """Breadth-first shortest vertex path from v to w, deterministic."""
        if v == w:
            return [v]
        parent = {v: None}
        queue = [v]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for j, *_ in self.adjacency[u]:
                if j not in parent:
                    parent[j] = u
                    if j == w:
                        path = [w]
                        while path[-1] != v:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(j)
        raise Unreachable(f"no path from {v} to {w}")


def build_gamma(polygon: FundamentalPolygon) -> GammaGraph:
    return GammaGraph(polygon)


# -- bundled example surfaces ----------------------------------------------

BUNDLED_SURFACES = (
    "triangle",
    "quadrilateral",
    "punctured_torus",
    "genus2_one_puncture",
    "sphere_four_punctures",
)


def bundled_surface_path(name: str):
    from importlib.resources import files

    if name not in BUNDLED_SURFACES:
        raise InvalidSurface(f"no bundled surface named {name!r}; have {BUNDLED_SURFACES}")
    return files("sp2herm").joinpath("data", f"{name}.json")


def bundled_surface(name: str) -> FundamentalPolygon:
    with bundled_surface_path(name).open() as fh:
        return FundamentalPolygon.from_data(json.load(fh))
