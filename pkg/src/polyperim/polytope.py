"""Convex polytopes given by vertices and facet incidence lists.

A :class:`Polytope` is the boundary surface of a compact convex body in
``R^d`` (``2 <= d <= 4``), stored as vertex coordinates plus one vertex-index
list per facet.  Documents are plain JSON objects with fields ``dim``,
``vertices``, optional ``facets`` and optional ``name``; indices are 0-based.

Facet enumeration is exhaustive: every d-subset of vertices that spans a
supporting hyperplane contributes its maximal coplanar vertex set.  This is
quadratic-ish and perfectly adequate at desk scale (the 4-cube needs 1820
candidate planes).

Measures (facet areas, cell volumes) use the recursive cone-from-centroid
decomposition ``|P| = (1/k) * sum_F |F| * dist(centroid, aff F)``, which
bottoms out at segment lengths and never needs an external hull library.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadDocument,
    DegenerateFacet,
    DimensionTooHigh,
    InvalidPolytope,
    NonConvex,
    NotFullDimensional,
)

#: Coplanarity / convexity tolerance, in coordinate units.
TOL = 1e-9

#: Vertices closer than this are merged on load.
MERGE_TOL = 1e-9

MAX_DIM = 4


# ---------------------------------------------------------------------------
# low-level geometry helpers
# ---------------------------------------------------------------------------

def _normal_through(pts: np.ndarray) -> np.ndarray | None:
    """Unit normal of the hyperplane through ``d`` points in R^d.

    Returns None when the points do not span a hyperplane.
    """
    d = pts.shape[1]
    if d == 2:
        v = pts[1] - pts[0]
        n = np.array([-v[1], v[0]])
    elif d == 3:
        n = np.cross(pts[1] - pts[0], pts[2] - pts[0])
    elif d == 4:
        u, v, w = pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0]
        m = np.stack([u, v, w])
        n = np.empty(4)
        cols = [0, 1, 2, 3]
        sign = 1.0
        for i in range(4):
            minor = m[:, [c for c in cols if c != i]]
            n[i] = sign * np.linalg.det(minor)
            sign = -sign
    else:
        raise DimensionTooHigh(f"ambient dimension {d} > {MAX_DIM}")
    norm = np.linalg.norm(n)
    scale = max(1.0, float(np.abs(pts).max()))
    if norm <= TOL * scale:
        return None
    return n / norm


def affine_span(points: np.ndarray, tol: float = TOL):
    """Origin, orthonormal basis and rank of the affine span of ``points``."""
    pts = np.asarray(points, dtype=float)
    origin = pts.mean(axis=0)
    centered = pts - origin
    if len(pts) == 1:
        return origin, np.zeros((0, pts.shape[1])), 0
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    cutoff = tol * max(1.0, sv[0] if len(sv) else 1.0)
    rank = int((sv > cutoff).sum())
    return origin, vt[:rank], rank


def project_to_span(points: np.ndarray, origin: np.ndarray, basis: np.ndarray) -> np.ndarray:
    return (np.asarray(points, dtype=float) - origin) @ basis.T


def fit_plane(points: np.ndarray, tol: float = TOL):
    """Best-fit hyperplane ``(normal, offset)`` through d-or-more points.

    Raises DegenerateFacet when the points are not (d-1)-dimensional.
    """
    pts = np.asarray(points, dtype=float)
    d = pts.shape[1]
    origin, basis, rank = affine_span(pts, tol)
    if rank < d - 1:
        raise DegenerateFacet(
            f"facet spans only {rank} dimensions, expected {d - 1}"
        )
    # For exactly coplanar points this is the exact plane; for warped input it
    # is the least-squares plane, and convexity checks report the violation.
    _, _, vt = np.linalg.svd(pts - origin, full_matrices=True)
    normal = vt[-1]
    normal = normal / np.linalg.norm(normal)
    return normal, float(normal @ origin)


def enumerate_facets(vertices: np.ndarray, tol: float = TOL) -> list[tuple[int, ...]]:
    """Facets of the convex hull of points in convex position, d <= 4.

    Each d-subset spanning a supporting hyperplane yields the maximal set of
    vertices on that plane.  Output is a lexicographically sorted list of
    sorted index tuples.
    """
    verts = np.asarray(vertices, dtype=float)
    if verts.ndim != 2:
        raise NotFullDimensional("vertex array must be 2-dimensional")
    m, d = verts.shape
    if d > MAX_DIM:
        raise DimensionTooHigh(f"ambient dimension {d} > {MAX_DIM}")
    if d < 1:
        raise NotFullDimensional("ambient dimension must be at least 1")
    _, _, rank = affine_span(verts, tol)
    if rank < d or m < d + 1:
        raise NotFullDimensional(
            f"{m} vertices span {rank} dimensions, expected {d}"
        )
    scale = max(1.0, float(np.abs(verts).max()))
    found: set[tuple[int, ...]] = set()
    for combo in itertools.combinations(range(m), d):
        normal = _normal_through(verts[list(combo)])
        if normal is None:
            continue
        offset = float(normal @ verts[combo[0]])
        side = verts @ normal - offset
        if (side <= tol * scale).all():
            pass
        elif (side >= -tol * scale).all():
            side = -side
        else:
            continue
        members = tuple(int(i) for i in np.nonzero(np.abs(side) <= tol * scale)[0])
        found.add(members)
    return sorted(found)


def order_polygon(points: np.ndarray) -> np.ndarray:
    """Indices of convex-polygon vertices in cyclic order around the centroid."""
    origin, basis, rank = affine_span(points)
    if rank != 2:
        raise DegenerateFacet("polygon vertices do not span a plane")
    flat = project_to_span(points, origin, basis)
    angles = np.arctan2(flat[:, 1], flat[:, 0])
    return np.argsort(angles, kind="stable")


def polytope_measure(points: np.ndarray, tol: float = TOL) -> float:
    """k-dimensional measure of the convex hull of points in convex position.

    The dimension k is the affine rank of the point set; the recursion
    ``|P| = (1/k) * sum |facet| * height`` runs entirely in local coordinates.
    """
    pts = np.asarray(points, dtype=float)
    origin, basis, rank = affine_span(pts, tol)
    if rank == 0:
        return 0.0
    local = project_to_span(pts, origin, basis)
    return _measure_full(local, tol)


def _measure_full(pts: np.ndarray, tol: float) -> float:
    k = pts.shape[1]
    if k == 1:
        return float(pts.max() - pts.min())
    centroid = pts.mean(axis=0)
    total = 0.0
    for facet in enumerate_facets(pts, tol):
        fpts = pts[list(facet)]
        normal, offset = fit_plane(fpts, tol)
        height = abs(float(normal @ centroid) - offset)
        total += polytope_measure(fpts, tol) * height
    return total / k


# ---------------------------------------------------------------------------
# the polytope type
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Polytope:
    """Boundary surface of a compact convex body, with validated incidences.

    Attributes
    ----------
    vertices : (m, d) float array
    facets : tuple of sorted vertex-index tuples, lexicographically sorted
    facet_normals : (F, d) outward unit normals
    facet_offsets : (F,) plane offsets, so a facet plane is {a . x = b}
    name : optional label carried through serialization
    """

    vertices: np.ndarray
    facets: tuple[tuple[int, ...], ...]
    name: str | None = None
    tol: float = TOL
    facet_normals: np.ndarray = field(init=False)
    facet_offsets: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.vertices = np.asarray(self.vertices, dtype=float)
        if self.vertices.ndim != 2:
            raise BadDocument("vertices must be a list of coordinate rows")
        d = self.dim
        if d > MAX_DIM:
            raise DimensionTooHigh(f"ambient dimension {d} > {MAX_DIM}")
        if d < 2:
            raise NotFullDimensional("ambient dimension must be at least 2")
        m = len(self.vertices)
        canon = []
        for f in self.facets:
            idx = tuple(sorted(int(i) for i in f))
            if len(set(idx)) != len(idx):
                raise InvalidPolytope(f"facet {f} repeats a vertex")
            if idx and (idx[0] < 0 or idx[-1] >= m):
                raise InvalidPolytope(f"facet {f} references a missing vertex")
            if len(idx) < d:
                raise DegenerateFacet(
                    f"facet {idx} has {len(idx)} vertices, needs at least {d}"
                )
            canon.append(idx)
        self.facets = tuple(sorted(canon))
        if not self.facets:
            raise InvalidPolytope("polytope has no facets")
        _, _, rank = affine_span(self.vertices, self.tol)
        if rank < d:
            raise NotFullDimensional(
                f"vertices span {rank} dimensions, expected {d}"
            )
        self._fit_facet_planes()
        self._check_convexity()
        self._check_coplanarity()
        self._check_incidence()
        self._ordered_cache: dict[int, np.ndarray] = {}

    # -- validation pieces ------------------------------------------------

    def _fit_facet_planes(self) -> None:
        normals = []
        offsets = []
        centroid = self.vertices.mean(axis=0)
        for f in self.facets:
            normal, offset = fit_plane(self.vertices[list(f)], self.tol)
            if normal @ centroid > offset:
                normal, offset = -normal, -offset
            normals.append(normal)
            offsets.append(offset)
        self.facet_normals = np.array(normals)
        self.facet_offsets = np.array(offsets)

    def _check_convexity(self) -> None:
        scale = max(1.0, float(np.abs(self.vertices).max()))
        side = self.vertices @ self.facet_normals.T - self.facet_offsets
        worst = side.max()
        if worst > self.tol * scale:
            v, f = np.unravel_index(np.argmax(side), side.shape)
            raise NonConvex(
                f"vertex {v} lies {worst:.3g} outside the plane of facet {f}"
            )

    def _check_coplanarity(self) -> None:
        scale = max(1.0, float(np.abs(self.vertices).max()))
        for fi, f in enumerate(self.facets):
            resid = np.abs(
                self.vertices[list(f)] @ self.facet_normals[fi]
                - self.facet_offsets[fi]
            ).max()
            if resid > self.tol * scale:
                raise DegenerateFacet(
                    f"facet {fi} vertices deviate {resid:.3g} from their plane"
                )

    def _check_incidence(self) -> None:
        d = self.dim
        counts = np.zeros(len(self.vertices), dtype=int)
        for fi in range(len(self.facets)):
            on = self.vertex_on_facet(fi)
            counts += on
        short = np.nonzero(counts < d)[0]
        if len(short):
            raise InvalidPolytope(
                f"vertex {short[0]} lies on {counts[short[0]]} facets, "
                f"expected at least {d} (not in convex position?)"
            )

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return int(self.vertices.shape[1])

    @property
    def surface_dim(self) -> int:
        return self.dim - 1

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def vertex_on_facet(self, facet_index: int) -> np.ndarray:
        """Boolean mask of vertices lying on the given facet plane."""
        scale = max(1.0, float(np.abs(self.vertices).max()))
        resid = np.abs(
            self.vertices @ self.facet_normals[facet_index]
            - self.facet_offsets[facet_index]
        )
        return resid <= self.tol * scale

    def incident_facets(self, vertex_index: int) -> list[int]:
        return [fi for fi, f in enumerate(self.facets) if vertex_index in f]

    def facet_points(self, facet_index: int) -> np.ndarray:
        return self.vertices[list(self.facets[facet_index])]

    def facet_ring(self, facet_index: int) -> np.ndarray:
        """Facet vertex indices in cyclic polygon order (d = 3 facets only)."""
        cached = self._ordered_cache.get(facet_index)
        if cached is None:
            f = np.array(self.facets[facet_index], dtype=int)
            order = order_polygon(self.vertices[f])
            cached = f[order]
            self._ordered_cache[facet_index] = cached
        return cached

    def facet_measure(self, facet_index: int) -> float:
        return polytope_measure(self.facet_points(facet_index), self.tol)

    def surface_area(self) -> float:
        """Total (d-1)-measure of the boundary."""
        return float(sum(self.facet_measure(fi) for fi in range(len(self.facets))))

    def scaled(self, factor: float) -> "Polytope":
        return Polytope(self.vertices * float(factor), self.facets, name=self.name)

    # -- document I/O -----------------------------------------------------

    @classmethod
    def from_vertices(
        cls,
        vertices,
        facets=None,
        name: str | None = None,
    ) -> "Polytope":
        """Build from coordinates, enumerating facets when none are given."""
        verts = _dedupe(np.asarray(vertices, dtype=float))
        if facets is None:
            facets = enumerate_facets(verts)
        return cls(verts, tuple(tuple(f) for f in facets), name=name)

    @classmethod
    def from_document(cls, doc: dict) -> "Polytope":
        if not isinstance(doc, dict):
            raise BadDocument("document must be a JSON object")
        for key in ("dim", "vertices"):
            if key not in doc:
                raise BadDocument(f"document missing field {key!r}")
        dim = doc["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise BadDocument("field 'dim' must be an integer")
        try:
            verts = np.asarray(doc["vertices"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise BadDocument(f"bad vertex coordinates: {exc}") from None
        if verts.ndim != 2 or verts.shape[1] != dim:
            raise BadDocument(
                f"vertices must be rows of {dim} coordinates"
            )
        if not np.isfinite(verts).all():
            raise BadDocument("vertex coordinates must be finite")
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise BadDocument("field 'name' must be a string")
        raw_facets = doc.get("facets")
        verts, remap = _dedupe_with_map(verts)
        facets = None
        if raw_facets is not None:
            if not isinstance(raw_facets, list):
                raise BadDocument("field 'facets' must be a list of index lists")
            try:
                facets = [tuple(sorted({remap[int(i)] for i in f})) for f in raw_facets]
            except (TypeError, ValueError, IndexError) as exc:
                raise BadDocument(f"bad facet index list: {exc}") from None
        if facets is None:
            facets = enumerate_facets(verts)
        return cls(verts, tuple(facets), name=name)

    @classmethod
    def loads(cls, text: str) -> "Polytope":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BadDocument(f"not valid JSON: {exc}") from None
        return cls.from_document(doc)

    @classmethod
    def load(cls, path) -> "Polytope":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.loads(handle.read())

    def serialize(self) -> dict:
        """Canonical document: facet indices sorted, facets sorted."""
        doc = {
            "dim": self.dim,
            "vertices": [[float(c) for c in row] for row in self.vertices],
            "facets": [list(f) for f in self.facets],
        }
        if self.name is not None:
            doc["name"] = self.name
        return doc

    def dumps(self) -> str:
        return json.dumps(self.serialize(), indent=2, sort_keys=True)

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.dumps())
            handle.write("\n")


def _dedupe(verts: np.ndarray) -> np.ndarray:
    out, _ = _dedupe_with_map(verts)
    return out


def _dedupe_with_map(verts: np.ndarray):
    """Merge vertices closer than MERGE_TOL; returns (unique, index map)."""
    m = len(verts)
    remap = np.full(m, -1, dtype=int)
    kept: list[int] = []
    for i in range(m):
        for slot, j in enumerate(kept):
            if np.linalg.norm(verts[i] - verts[j]) < MERGE_TOL:
                remap[i] = slot
                break
        else:
            remap[i] = len(kept)
            kept.append(i)
    return verts[kept], remap


def load_polytope(source) -> Polytope:
    """Load a polytope document from a dict, JSON string, or file path."""
    if isinstance(source, dict):
        return Polytope.from_document(source)
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return Polytope.loads(source)
    return Polytope.load(source)
