"""Triangulated surface meshes for 3-polytopes.

``subdivide`` fan-triangulates every facet from its centroid and then applies
uniform 4-to-1 midpoint subdivision.  All triangles stay inside their flat
facet, so facet areas are preserved exactly at every level.  Mesh positions
start with the polytope vertices, so polytope vertex ``i`` is mesh position
``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UnsupportedDimension
from .polytope import Polytope

MAX_LEVEL = 8


@dataclass(eq=False)
class SurfaceMesh:
    """Closed triangle mesh of a polytope boundary.

    Attributes
    ----------
    positions : (P, 3) float array
    triangles : (T, 3) int array of position indices
    facet_of : (T,) index of the source polytope facet per triangle
    subdivision_level : number of 4-to-1 refinement rounds applied
    polytope : the source polytope (positions 0..m-1 are its vertices)
    """

    positions: np.ndarray
    triangles: np.ndarray
    facet_of: np.ndarray
    subdivision_level: int
    polytope: Polytope | None = None

    edges: np.ndarray = field(init=False)
    edge_lengths: np.ndarray = field(init=False)
    edge_triangles: np.ndarray = field(init=False)
    tri_edges: np.ndarray = field(init=False)
    tri_neighbors: np.ndarray = field(init=False)
    areas: np.ndarray = field(init=False)
    centroids: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.positions = np.asarray(self.positions, dtype=float)
        self.triangles = np.asarray(self.triangles, dtype=np.int64)
        self.facet_of = np.asarray(self.facet_of, dtype=np.int64)
        self._build_edges()
        p = self.positions
        t = self.triangles
        cross = np.cross(p[t[:, 1]] - p[t[:, 0]], p[t[:, 2]] - p[t[:, 0]])
        self.areas = 0.5 * np.linalg.norm(cross, axis=1)
        self.centroids = p[t].mean(axis=1)

    def _build_edges(self) -> None:
        t = self.triangles
        raw = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        raw.sort(axis=1)
        edges, inverse = np.unique(raw, axis=0, return_inverse=True)
        self.edges = edges
        self.tri_edges = inverse.reshape(3, -1).T.copy()
        ecount = len(edges)
        edge_tri = np.full((ecount, 2), -1, dtype=np.int64)
        tri_ids = np.tile(np.arange(len(t)), 3)
        for eid, tid in zip(inverse, tri_ids):
            if edge_tri[eid, 0] < 0:
                edge_tri[eid, 0] = tid
            elif edge_tri[eid, 1] < 0:
                edge_tri[eid, 1] = tid
            else:
                raise ValueError(f"edge {eid} belongs to more than two triangles")
        self.edge_triangles = edge_tri
        d = self.positions[edges[:, 0]] - self.positions[edges[:, 1]]
        self.edge_lengths = np.linalg.norm(d, axis=1)
        nb = np.full((len(t), 3), -1, dtype=np.int64)
        for ti in range(len(t)):
            for slot, eid in enumerate(self.tri_edges[ti]):
                a, b = edge_tri[eid]
                nb[ti, slot] = b if a == ti else a
        self.tri_neighbors = nb

    # -- queries ----------------------------------------------------------

    @property
    def triangle_count(self) -> int:
        return int(len(self.triangles))

    def total_area(self) -> float:
        return float(self.areas.sum())

    def is_closed(self) -> bool:
        return bool((self.edge_triangles >= 0).all())

    def max_edge_length(self) -> float:
        return float(self.edge_lengths.max())


def subdivide(polytope: Polytope, level: int) -> SurfaceMesh:
    """Triangulate the boundary of a 3-polytope at the given refinement level."""
    if polytope.dim != 3:
        raise UnsupportedDimension(
            f"surface meshing is defined for d = 3, got d = {polytope.dim}"
        )
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"subdivision level must be in [0, {MAX_LEVEL}]")

    positions = [row for row in polytope.vertices]
    triangles: list[tuple[int, int, int]] = []
    facet_of: list[int] = []
    for fi in range(len(polytope.facets)):
        ring = polytope.facet_ring(fi)
        center = polytope.vertices[ring].mean(axis=0)
        ci = len(positions)
        positions.append(center)
        for a, b in zip(ring, np.roll(ring, -1)):
            triangles.append((ci, int(a), int(b)))
            facet_of.append(fi)

    for _ in range(level):
        midpoint: dict[tuple[int, int], int] = {}

        def mid(a: int, b: int) -> int:
            key = (a, b) if a < b else (b, a)
            idx = midpoint.get(key)
            if idx is None:
                idx = len(positions)
                positions.append(0.5 * (positions[a] + positions[b]))
                midpoint[key] = idx
            return idx

        new_tris: list[tuple[int, int, int]] = []
        new_facets: list[int] = []
        for (a, b, c), fi in zip(triangles, facet_of):
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new_tris.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
            new_facets.extend([fi, fi, fi, fi])
        triangles = new_tris
        facet_of = new_facets

    return SurfaceMesh(
        np.array(positions),
        np.array(triangles, dtype=np.int64),
        np.array(facet_of, dtype=np.int64),
        subdivision_level=level,
        polytope=polytope,
    )
