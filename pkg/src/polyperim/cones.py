"""Tangent cones at polytope vertices and apex-ball perimeter profiles.

At a vertex v of a polytope surface the nearby geometry is a metric cone over
the vertex link.  The link measure ``omega`` determines the apex-ball profile

    V(r) = omega * r^n / n,   A(r) = omega * r^(n-1)
    =>  A(V) = c * V^t,  c = omega^(1/n) * n^((n-1)/n),  t = (n-1)/n,

where n = d-1 is the surface dimension.  Note the exponent: eliminating r
from the pair above forces t = (n-1)/n.  The variant (n-2)/(n-1) that
sometimes appears in print fails the elimination (for n = 2 it would make
apex balls have volume-independent perimeter) and is reported alongside the
working exponent by the CLI, not used.

Link measures:

* n = 1 (polygon boundary): counting measure, always 2.
* n = 2 (polyhedron): sum of the incident facet angles at v, in radians.
* n = 3 (4-polytope): sum over incident cells of the interior solid angle at
  v, each computed inside the cell's 3-dimensional span by triangulating the
  vertex figure into simplicial cones and applying the arctangent formula
  for a trihedral cone.

``r_max`` is the conservative star-containment radius: the smallest distance
from v to a boundary face of its star, measured inside each incident facet
(facets are flat, so in-facet straight lines are intrinsic geodesics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDimension, VolumeTooLarge
from .polytope import (
    Polytope,
    affine_span,
    enumerate_facets,
    order_polygon,
    project_to_span,
)
from .profiles import sphere_measure


@dataclass(frozen=True)
class VertexCone:
    """Link data for one polytope vertex."""

    vertex_index: int
    surface_dim: int
    link_volume: float
    r_max: float
    facet_contributions: tuple[tuple[int, float], ...]

    @property
    def valid_volume_max(self) -> float:
        n = self.surface_dim
        return self.link_volume * self.r_max**n / n


@dataclass(frozen=True)
class PowerLawProfile:
    """Apex-ball profile ``A(V) = coefficient * V^exponent``."""

    coefficient: float
    exponent: float
    valid_volume_max: float
    link_volume: float
    surface_dim: int

    def area(self, volume: float) -> float:
        if volume <= 0:
            raise VolumeTooLarge("volume must be positive")
        if volume > self.valid_volume_max * (1 + 1e-12):
            raise VolumeTooLarge(
                f"volume {volume} exceeds validity bound {self.valid_volume_max}"
            )
        return self.coefficient * volume**self.exponent

    def radius(self, volume: float) -> float:
        n = self.surface_dim
        return (n * volume / self.link_volume) ** (1.0 / n)


def tet_solid_angle(a, b, c) -> float:
    """Solid angle of the trihedral cone spanned by three rays.

    Arctangent form: with unit rays, ``tan(omega/2) = |det[a b c]| /
    (1 + a.b + a.c + b.c)``, evaluated with atan2 so flat and wide cones are
    handled without branching.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    c = np.asarray(c, float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    c = c / np.linalg.norm(c)
    num = abs(float(np.linalg.det(np.stack([a, b, c]))))
    den = 1.0 + float(a @ b) + float(a @ c) + float(b @ c)
    return 2.0 * math.atan2(num, den)


# ---------------------------------------------------------------------------
# link contributions per ambient dimension
# ---------------------------------------------------------------------------

def _facet_angle(poly: Polytope, facet_index: int, vertex: int) -> float:
    """Interior angle of a polygonal facet at one of its vertices (d = 3)."""
    ring = poly.facet_ring(facet_index)
    pos = int(np.nonzero(ring == vertex)[0][0])
    v = poly.vertices[vertex]
    prev_pt = poly.vertices[ring[pos - 1]]
    next_pt = poly.vertices[ring[(pos + 1) % len(ring)]]
    u1 = prev_pt - v
    u2 = next_pt - v
    cr = np.linalg.norm(np.cross(u1, u2))
    return math.atan2(float(cr), float(u1 @ u2))


def _cell_vertex_rays(local: np.ndarray, apex: int) -> list[int]:
    """Edge-neighbors of ``apex`` in a 3-polytope, in cyclic order.

    Walks the cycle of faces around the apex: each incident face contributes
    the two apex-adjacent vertices of its polygon, and consecutive faces share
    one of them.
    """
    faces = enumerate_facets(local)
    pairs: dict[int, tuple[int, int]] = {}
    for fid, face in enumerate(faces):
        if apex not in face:
            continue
        fpts = local[list(face)]
        ring = np.array(face, dtype=int)[order_polygon(fpts)]
        pos = int(np.nonzero(ring == apex)[0][0])
        pairs[fid] = (int(ring[pos - 1]), int(ring[(pos + 1) % len(ring)]))
    if not pairs:
        raise ValueError("apex not on any face of its cell")
    face_ids = sorted(pairs)
    start = face_ids[0]
    order = [pairs[start][0], pairs[start][1]]
    used = {start}
    while True:
        current = order[-1]
        nxt = None
        for fid in face_ids:
            if fid in used:
                continue
            a, b = pairs[fid]
            if a == current:
                nxt = b
            elif b == current:
                nxt = a
            if nxt is not None:
                used.add(fid)
                break
        if nxt is None or nxt == order[0]:
            break
        order.append(nxt)
    return order


def _cell_solid_angle(points: np.ndarray, apex: int) -> float:
    """Interior solid angle of a 3-polytope (given in local 3D coords) at a
    vertex, via fan triangulation of the vertex figure."""
    rays_idx = _cell_vertex_rays(points, apex)
    rays = points[rays_idx] - points[apex]
    rays = rays / np.linalg.norm(rays, axis=1)[:, None]
    total = 0.0
    for i in range(1, len(rays) - 1):
        total += tet_solid_angle(rays[0], rays[i], rays[i + 1])
    return total


def _point_segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    t = float((p - a) @ ab) / float(ab @ ab)
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - (a + t * ab)))


def _point_polygon_distance(p: np.ndarray, poly_pts: np.ndarray) -> float:
    """Distance from a point to a convex polygon embedded in 3-space."""
    origin, basis, rank = affine_span(poly_pts)
    if rank != 2:
        raise ValueError("polygon vertices do not span a plane")
    flat = project_to_span(poly_pts, origin, basis)
    order = order_polygon(poly_pts)
    flat = flat[order]
    pts = poly_pts[order]
    q = project_to_span(p[None, :], origin, basis)[0]
    inside = True
    sign = 0.0
    for i in range(len(flat)):
        e = flat[(i + 1) % len(flat)] - flat[i]
        s = e[0] * (q[1] - flat[i][1]) - e[1] * (q[0] - flat[i][0])
        if sign == 0.0 and abs(s) > 1e-15:
            sign = math.copysign(1.0, s)
        elif s * sign < -1e-12:
            inside = False
            break
    if inside:
        normal = np.cross(poly_pts[1] - poly_pts[0], poly_pts[2] - poly_pts[0])
        normal = normal / np.linalg.norm(normal)
        return abs(float((p - poly_pts[0]) @ normal))
    return min(
        _point_segment_distance(p, pts[i], pts[(i + 1) % len(pts)])
        for i in range(len(pts))
    )


def _star_radius(poly: Polytope, vertex: int) -> float:
    """Distance from a vertex to the boundary of its facet star."""
    d = poly.dim
    v = poly.vertices[vertex]
    best = math.inf
    for fi in poly.incident_facets(vertex):
        if d == 2:
            (a, b) = poly.facets[fi]
            other = b if a == vertex else a
            best = min(best, float(np.linalg.norm(poly.vertices[other] - v)))
        elif d == 3:
            ring = poly.facet_ring(fi)
            k = len(ring)
            pos = int(np.nonzero(ring == vertex)[0][0])
            for i in range(k):
                j = (i + 1) % k
                if pos in (i, j):
                    continue
                best = min(
                    best,
                    _point_segment_distance(
                        v, poly.vertices[ring[i]], poly.vertices[ring[j]]
                    ),
                )
        else:
            cell = poly.facets[fi]
            cell_pts = poly.vertices[list(cell)]
            origin, basis, rank = affine_span(cell_pts)
            if rank != 3:
                raise UnsupportedDimension("cell is not 3-dimensional")
            local = project_to_span(cell_pts, origin, basis)
            vloc = project_to_span(v[None, :], origin, basis)[0]
            apex = cell.index(vertex)
            for face in enumerate_facets(local):
                if apex in face:
                    continue
                best = min(
                    best, _point_polygon_distance(vloc, local[list(face)])
                )
    return best


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def link_volume(poly: Polytope, vertex: int) -> VertexCone:
    """Measure the vertex link and star radius; see the module docstring."""
    if not 0 <= vertex < len(poly.vertices):
        raise ValueError(f"vertex index {vertex} out of range")
    d = poly.dim
    n = poly.surface_dim
    contributions: list[tuple[int, float]] = []
    if d == 2:
        for fi in poly.incident_facets(vertex):
            contributions.append((fi, 1.0))
    elif d == 3:
        for fi in poly.incident_facets(vertex):
            contributions.append((fi, _facet_angle(poly, fi, vertex)))
    elif d == 4:
        for fi in poly.incident_facets(vertex):
            cell = poly.facets[fi]
            cell_pts = poly.vertices[list(cell)]
            origin, basis, _ = affine_span(cell_pts)
            local = project_to_span(cell_pts, origin, basis)
            contributions.append(
                (fi, _cell_solid_angle(local, cell.index(vertex)))
            )
    else:
        raise UnsupportedDimension(f"no link measure for d = {d}")
    omega = float(sum(c for _, c in contributions))
    if n >= 2 and not 0.0 < omega < sphere_measure(n - 1) + 1e-9:
        raise ValueError(
            f"vertex {vertex}: link measure {omega} outside (0, |S^{n-1}|)"
        )
    return VertexCone(
        vertex_index=vertex,
        surface_dim=n,
        link_volume=omega,
        r_max=_star_radius(poly, vertex),
        facet_contributions=tuple(contributions),
    )


def vertex_cones(poly: Polytope) -> list[VertexCone]:
    return [link_volume(poly, v) for v in range(len(poly.vertices))]


def apex_ball_profile(cone: VertexCone) -> PowerLawProfile:
    """Power-law profile of balls about the cone apex.

    For n = 1 the boundary is two points whatever the volume, so the profile
    degenerates to the constant 2 (exponent 0).
    """
    n = cone.surface_dim
    if n not in (1, 2, 3):
        raise UnsupportedDimension(f"no apex profile for surface dimension {n}")
    omega = cone.link_volume
    if n == 1:
        return PowerLawProfile(2.0, 0.0, cone.valid_volume_max, omega, n)
    c = omega ** (1.0 / n) * n ** ((n - 1.0) / n)
    return PowerLawProfile(c, (n - 1.0) / n, cone.valid_volume_max, omega, n)


def optimal_vertex(poly: Polytope) -> tuple[int, PowerLawProfile]:
    """Vertex of smallest link measure (lowest index wins ties)."""
    cones = vertex_cones(poly)
    best = min(range(len(cones)), key=lambda i: (cones[i].link_volume, i))
    return best, apex_ball_profile(cones[best])


@dataclass(frozen=True)
class BallAllocation:
    """Placement of a whole volume budget as a single apex ball."""

    vertex_index: int
    volume: float
    perimeter: float
    profile: PowerLawProfile


def single_ball_allocation(volume: float, cones: list[VertexCone]) -> BallAllocation:
    """Allocate all of ``volume`` to the minimum-link cone.

    Concavity of V^t makes any split across several cones at least as
    expensive, so a single ball at the smallest link is optimal.
    """
    if volume <= 0:
        raise VolumeTooLarge("volume must be positive")
    if not cones:
        raise ValueError("need at least one cone")
    if len({c.surface_dim for c in cones}) != 1:
        raise ValueError("cones must share the surface dimension")
    best = min(range(len(cones)), key=lambda i: (cones[i].link_volume, i))
    profile = apex_ball_profile(cones[best])
    if volume > profile.valid_volume_max * (1 + 1e-12):
        raise VolumeTooLarge(
            f"volume {volume} exceeds validity bound "
            f"{profile.valid_volume_max} of the chosen cone"
        )
    return BallAllocation(
        vertex_index=cones[best].vertex_index,
        volume=volume,
        perimeter=profile.area(volume),
        profile=profile,
    )


def deficit_sum(poly: Polytope) -> float:
    """Sum of angle deficits 2*pi - omega over all vertices of a 3-polytope."""
    if poly.dim != 3:
        raise UnsupportedDimension("deficit sum is defined for d = 3")
    return float(
        sum(2.0 * math.pi - link_volume(poly, v).link_volume
            for v in range(len(poly.vertices)))
    )


def renormalize_link(cone: VertexCone) -> float:
    """Density factor making the link measure match the round sphere."""
    if cone.surface_dim < 2:
        raise UnsupportedDimension("renormalization needs surface dimension >= 2")
    return sphere_measure(cone.surface_dim - 1) / cone.link_volume
