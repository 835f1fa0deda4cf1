import math

import numpy as np
import pytest

from polyperim import shapes
from polyperim.errors import NoFeasibleRegion, VolumeOutOfRange, VolumeTooLarge
from polyperim.mesh import SurfaceMesh, subdivide
from polyperim.solver import (
    Region,
    anisotropy_bound,
    default_config,
    minimize_perimeter,
    vertex_ball_region,
)


def test_region_complement_shares_cut():
    mesh = subdivide(shapes.cube(), 2)
    mask = mesh.centroids[:, 0] > 0.1
    region = Region(mesh=mesh, mask=mask)
    other = region.complement()
    assert region.area + other.area == pytest.approx(6.0, abs=1e-12)
    assert region.cut_perimeter == pytest.approx(other.cut_perimeter, abs=1e-12)
    assert np.array_equal(region.boundary_edges(), other.boundary_edges())
    assert region.triangle_count + other.triangle_count == mesh.triangle_count


def test_region_rejects_bad_mask():
    mesh = subdivide(shapes.cube(), 1)
    with pytest.raises(ValueError):
        Region(mesh=mesh, mask=np.ones(5, dtype=bool))


def test_anisotropy_bound_cube_is_sqrt2():
    """Fan triangles of a square are right isosceles at every level."""
    for level in (1, 2, 3):
        assert anisotropy_bound(subdivide(shapes.cube(), level)) == pytest.approx(
            math.sqrt(2.0), abs=1e-12
        )


def test_anisotropy_bound_equilateral():
    # bypass the centroid fan so every mesh triangle is a whole facet
    tet = shapes.tetrahedron()
    mesh = SurfaceMesh(
        positions=tet.vertices,
        triangles=np.array([list(f) for f in tet.facets]),
        facet_of=np.arange(4),
        subdivision_level=0,
        polytope=tet,
    )
    assert anisotropy_bound(mesh) == pytest.approx(2.0 / math.sqrt(3.0), abs=1e-9)
    # the centroid fan splits each facet into 120-degree isoceles triangles
    assert anisotropy_bound(subdivide(tet, 1)) == pytest.approx(2.0, abs=1e-9)


def test_vertex_ball_region_cube():
    mesh = subdivide(shapes.cube(), 4)
    volume = 3.0 * math.pi / 16.0  # ball radius exactly 1/2
    region = vertex_ball_region(mesh, 0, volume)
    amax = float(mesh.areas.max())
    assert abs(region.area - volume) <= amax + 1e-12
    incident = set(mesh.polytope.incident_facets(0))
    assert set(np.unique(mesh.facet_of[region.mask])) <= incident
    r = math.sqrt(2 * volume / (1.5 * math.pi))
    spread = np.linalg.norm(region.centroid - mesh.positions[0])
    assert spread < r + mesh.max_edge_length()


def test_vertex_ball_region_tetrahedron():
    mesh = subdivide(shapes.tetrahedron(), 4)
    volume = math.pi / 32.0  # link pi, radius 1/4
    region = vertex_ball_region(mesh, 2, volume)
    assert abs(region.area - volume) <= float(mesh.areas.max()) + 1e-12
    assert set(np.unique(mesh.facet_of[region.mask])) <= set(
        mesh.polytope.incident_facets(2)
    )


def test_vertex_ball_region_guards():
    mesh = subdivide(shapes.cube(), 2)
    with pytest.raises(VolumeTooLarge):
        vertex_ball_region(mesh, 0, 0.75 * math.pi * 1.01)
    with pytest.raises(VolumeTooLarge):
        vertex_ball_region(mesh, 0, 0.0)
    with pytest.raises(ValueError):
        vertex_ball_region(mesh, 99, 0.1)


def test_default_config_scales_to_mesh():
    mesh = subdivide(shapes.cube(), 2)
    cfg = default_config(mesh, seed=5, iterations=1000, restarts=3)
    assert cfg.seed == 5 and cfg.restarts == 3
    assert cfg.mu == pytest.approx(30.0 * mesh.max_edge_length() / mesh.areas.min())
    assert cfg.cooling**1000 == pytest.approx(1e-3, rel=1e-9)


def test_minimize_perimeter_quick_run_is_deterministic():
    mesh = subdivide(shapes.cube(), 2)
    volume = 0.375  # exactly six level-2 triangles
    cfg = default_config(mesh, seed=3, iterations=4000, restarts=2)
    first = minimize_perimeter(mesh, volume, cfg)
    second = minimize_perimeter(mesh, volume, cfg)
    assert first.perimeter == second.perimeter
    assert np.array_equal(first.region.mask, second.region.mask)
    assert abs(first.area - volume) <= 0.02 * volume
    # any admissible region obeys the corner-ball lower bound
    assert first.perimeter >= math.sqrt(3 * math.pi * first.area) - 1e-9
    assert len(first.restart_perimeters) == 2
    # restart entries come from the incremental flip bookkeeping, the result
    # perimeter from an exact resum, so allow roundoff between the two
    assert first.restart_perimeters[first.best_restart] == pytest.approx(
        first.perimeter, abs=1e-9
    )


def test_minimize_perimeter_warm_start_quality():
    mesh = subdivide(shapes.cube(), 3)
    volume = 0.1
    cfg = default_config(mesh, seed=1, iterations=2000, restarts=1)
    ball = vertex_ball_region(mesh, 0, volume)
    res = minimize_perimeter(mesh, volume, cfg, warm_starts=[ball])
    # polished warm start is always a finalist, so the result cannot be
    # worse than the anisotropy ceiling of the discrete corner ball
    kappa = anisotropy_bound(mesh)
    assert res.perimeter <= kappa * math.sqrt(3 * math.pi * (volume * 1.02))
    assert res.perimeter >= math.sqrt(3 * math.pi * res.area) - 1e-9


def test_minimize_perimeter_infeasible_volume():
    mesh = subdivide(shapes.cube(), 2)
    cfg = default_config(mesh, seed=0, iterations=50, restarts=1)
    with pytest.raises(NoFeasibleRegion):
        minimize_perimeter(mesh, 0.02, cfg)


def test_minimize_perimeter_domain_checks():
    mesh = subdivide(shapes.cube(), 1)
    with pytest.raises(VolumeOutOfRange):
        minimize_perimeter(mesh, 7.0)
    with pytest.raises(VolumeOutOfRange):
        minimize_perimeter(mesh, 0.0)
    lid = SurfaceMesh(
        positions=np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]]),
        triangles=np.array([[0, 1, 2]]),
        facet_of=np.array([0]),
        subdivision_level=0,
    )
    with pytest.raises(ValueError):
        minimize_perimeter(lid, 0.1)
