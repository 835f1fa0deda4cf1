"""Discrete perimeter minimization on subdivided polytope surfaces.

A *region* is a set of mesh triangles; its area is the triangle-area sum and
its cut perimeter the length of edges separating inside from outside.  The
solver looks for a region of prescribed area and small cut perimeter with
simulated annealing over single-triangle flips:

* the candidate set holds every triangle touching the current boundary
  (indexed list, O(1) uniform sampling and updates);
* moves are scored by the penalized cost  perimeter + mu * |area - V|  and
  accepted by the Metropolis rule under a geometric cooling schedule;
* whenever the state is volume-feasible (area within 2% of V) the best
  penalized cost and its mask are snapshotted;
* the best snapshot is polished by steepest-descent flips, then topped up
  so the final area is >= V (never below: the reported perimeter must stay
  an honest upper bound for the target volume, not for a slightly smaller
  one).

Restarts use independent RNG streams seeded by (seed, restart index); warm
starts (typically vertex balls) occupy the first restarts, the rest begin
from random connected blobs.

``anisotropy_bound`` returns the mesh constant kappa >= 1 comparing discrete
cut lengths to Euclidean lengths: a straight segment rendered as a staircase
of triangle edges is at most kappa times longer, where for each triangle
kappa_tri = 1 / cos(gap/2) and gap is the largest angular gap between its
edge directions (mod pi).  Right isosceles triangles give sqrt(2),
equilateral ones 2/sqrt(3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cones import link_volume
from .errors import NoFeasibleRegion, VolumeOutOfRange, VolumeTooLarge
from .mesh import SurfaceMesh

FEASIBILITY_FRACTION = 0.02


@dataclass(frozen=True)
class Region:
    """Triangle subset of a surface mesh."""

    mesh: SurfaceMesh
    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask, dtype=bool)
        if mask.shape != (self.mesh.triangle_count,):
            raise ValueError("mask length does not match the mesh")
        object.__setattr__(self, "mask", mask)

    @property
    def area(self) -> float:
        return float(self.mesh.areas[self.mask].sum())

    @property
    def cut_perimeter(self) -> float:
        et = self.mesh.edge_triangles
        cut = self.mask[et[:, 0]] != self.mask[et[:, 1]]
        return float(self.mesh.edge_lengths[cut].sum())

    @property
    def triangle_count(self) -> int:
        return int(self.mask.sum())

    @property
    def centroid(self) -> np.ndarray:
        a = self.mesh.areas[self.mask]
        return (a[:, None] * self.mesh.centroids[self.mask]).sum(axis=0) / a.sum()

    def complement(self) -> "Region":
        return Region(mesh=self.mesh, mask=~self.mask)

    def boundary_edges(self) -> np.ndarray:
        et = self.mesh.edge_triangles
        return np.nonzero(self.mask[et[:, 0]] != self.mask[et[:, 1]])[0]


def anisotropy_bound(mesh: SurfaceMesh) -> float:
    """Worst-case discrete-to-straight length ratio over mesh triangles."""
    pos = mesh.positions
    tris = mesh.triangles
    edges = np.stack(
        [
            pos[tris[:, 1]] - pos[tris[:, 0]],
            pos[tris[:, 2]] - pos[tris[:, 1]],
            pos[tris[:, 0]] - pos[tris[:, 2]],
        ],
        axis=1,
    )
    normal = np.cross(edges[:, 0], edges[:, 1])
    normal = normal / np.linalg.norm(normal, axis=1)[:, None]
    u = edges[:, 0] / np.linalg.norm(edges[:, 0], axis=1)[:, None]
    w = np.cross(normal, u)
    ang = np.arctan2(
        np.einsum("tjk,tk->tj", edges, w), np.einsum("tjk,tk->tj", edges, u)
    )
    ang = np.mod(ang, math.pi)
    ang.sort(axis=1)
    gaps = np.stack(
        [
            ang[:, 1] - ang[:, 0],
            ang[:, 2] - ang[:, 1],
            math.pi - ang[:, 2] + ang[:, 0],
        ],
        axis=1,
    )
    worst = float(gaps.max())
    return 1.0 / math.cos(worst / 2.0)


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    iterations: int = 200_000
    restarts: int = 8
    t_initial: float = 1.0
    cooling: float = 0.99995
    mu: float = 100.0


def default_config(
    mesh: SurfaceMesh,
    seed: int = 0,
    iterations: int = 200_000,
    restarts: int = 8,
) -> SolverConfig:
    """Scale the penalty weight and temperatures to the mesh.

    mu makes one triangle of area error cost far more than any single-move
    perimeter change; the initial temperature lets area fluctuate by a few
    triangles, and cooling reaches 1e-3 of it by the final iteration.
    """
    a_min = float(mesh.areas.min())
    a_mean = float(mesh.areas.mean())
    l_max = mesh.max_edge_length()
    mu = 30.0 * l_max / a_min
    t_initial = mu * a_mean
    cooling = (1e-3) ** (1.0 / max(1, iterations))
    return SolverConfig(
        seed=seed,
        iterations=iterations,
        restarts=restarts,
        t_initial=t_initial,
        cooling=cooling,
        mu=mu,
    )


@dataclass(frozen=True)
class SolverResult:
    region: Region
    perimeter: float
    area: float
    target_volume: float
    best_restart: int
    restart_perimeters: tuple[float, ...]
    config: SolverConfig


def vertex_ball_region(mesh: SurfaceMesh, vertex: int, volume: float) -> Region:
    """Discrete geodesic ball about a polytope vertex.

    The radius solves V = omega r^2 / 2 for the vertex link omega; the
    region is every triangle whose centroid lies within intrinsic distance r
    of the vertex.  Inside the vertex star the intrinsic distance needs no
    unfolding beyond the facet itself: a centroid on an incident facet is
    coplanar with the vertex, so the straight ambient segment lies in the
    facet and realizes the geodesic.  Triangles of non-incident facets are
    farther than r_max >= r and are excluded outright.  Membership is then
    adjusted in centroid-distance order so the region area lands within one
    triangle-area of V (the raw radius cut can be several triangles off).
    """
    if not 0 <= vertex < len(mesh.polytope.vertices):
        raise ValueError(f"vertex index {vertex} out of range")
    if volume <= 0:
        raise VolumeTooLarge("volume must be positive")
    cone = link_volume(mesh.polytope, vertex)
    if volume > cone.valid_volume_max * (1 + 1e-12):
        raise VolumeTooLarge(
            f"volume {volume} exceeds the star-contained bound "
            f"{cone.valid_volume_max} at vertex {vertex}"
        )
    r = math.sqrt(2.0 * volume / cone.link_volume)
    p = mesh.positions[vertex]
    incident = {f for f, _ in cone.facet_contributions}
    on_star = np.isin(mesh.facet_of, sorted(incident))
    dist = np.linalg.norm(mesh.centroids - p, axis=1)
    mask = on_star & (dist <= r)
    # the raw centroid rule can miss the target area by several triangles;
    # grow or trim in centroid-distance order until one triangle-area away
    order = np.argsort(np.where(on_star, dist, np.inf), kind="stable")
    area = float(mesh.areas[mask].sum())
    grow = iter([t for t in order if on_star[t] and not mask[t]])
    trim = iter([t for t in reversed(order) if mask[t]])
    while area < volume:
        t = next(grow, -1)
        if t < 0:
            break
        mask[t] = True
        area += float(mesh.areas[t])
    while area - volume > float(mesh.areas.max()):
        t = next(trim)
        mask[t] = False
        area -= float(mesh.areas[t])
    return Region(mesh=mesh, mask=mask)


# ---------------------------------------------------------------------------
# annealing internals (python lists for speed in the flip loop)
# ---------------------------------------------------------------------------

class _State:
    """Mutable flip-state shared by the annealing and polish phases."""

    __slots__ = (
        "nbrs", "lens", "areas", "mask", "area", "perimeter", "count",
        "cand", "pos", "volume",
    )

    def __init__(self, nbrs, lens, areas, init_mask, volume):
        self.nbrs = nbrs
        self.lens = lens
        self.areas = areas
        self.mask = list(init_mask)
        self.volume = volume
        self.cand: list[int] = []
        self.pos = [-1] * len(areas)
        self.count = sum(self.mask)
        self.area = 0.0
        self.perimeter = 0.0
        for t, inc in enumerate(self.mask):
            if inc:
                self.area += areas[t]
        for t in range(len(areas)):
            s = self.mask[t]
            for u, l in zip(self.nbrs[t], self.lens[t]):
                if self.mask[u] != s:
                    self.perimeter += l
        self.perimeter *= 0.5
        for t in range(len(areas)):
            self._refresh(t)

    def _refresh(self, t: int) -> None:
        s = self.mask[t]
        u0, u1, u2 = self.nbrs[t]
        m = self.mask
        want = (m[u0] != s) or (m[u1] != s) or (m[u2] != s)
        p = self.pos[t]
        if want and p < 0:
            self.pos[t] = len(self.cand)
            self.cand.append(t)
        elif not want and p >= 0:
            last = self.cand[-1]
            self.cand[p] = last
            self.pos[last] = p
            self.cand.pop()
            self.pos[t] = -1

    def deltas(self, t: int) -> tuple[float, float]:
        """(perimeter change, signed area change) of flipping triangle t."""
        s = self.mask[t]
        m = self.mask
        dp = 0.0
        for u, l in zip(self.nbrs[t], self.lens[t]):
            dp += l if m[u] == s else -l
        da = -self.areas[t] if s else self.areas[t]
        return dp, da

    def flip(self, t: int, dp: float, da: float) -> None:
        self.mask[t] = not self.mask[t]
        self.count += 1 if da > 0 else -1
        self.area += da
        self.perimeter += dp
        self._refresh(t)
        for u in self.nbrs[t]:
            self._refresh(u)


def _random_blob(rng, nbrs, areas, volume: float) -> list[bool]:
    """Connected triangle blob grown breadth-first to roughly the volume."""
    n = len(areas)
    start = int(rng.integers(n))
    mask = [False] * n
    mask[start] = True
    acc = areas[start]
    frontier = [start]
    while acc < volume and frontier:
        nxt: list[int] = []
        for t in frontier:
            for u in nbrs[t]:
                if not mask[u]:
                    mask[u] = True
                    acc += areas[u]
                    nxt.append(u)
                    if acc >= volume:
                        return mask
        frontier = nxt
    return mask


def _anneal(
    state: _State, cfg: SolverConfig, rng, feas: float
) -> tuple[float, list[bool] | None]:
    """Run one annealing pass; return best feasible (cost, mask).

    Each iteration proposes either a single boundary flip or a swap (one
    flip, then a second drawn from the updated boundary).  On equal-area
    meshes a swap of opposite sides leaves the area unchanged, so swaps
    keep rearranging the cut even after the temperature has dropped far
    below the area penalty scale.
    """
    mu = cfg.mu
    temp = cfg.t_initial
    cooling = cfg.cooling
    volume = state.volume
    best_cost = math.inf
    best_mask: list[bool] | None = None
    gap0 = abs(state.area - volume)
    if gap0 <= feas and state.count > 0:
        # a feasible starting region (e.g. a vertex ball) is already a
        # snapshot; annealing can then only improve on it
        best_cost = state.perimeter + mu * gap0
        best_mask = list(state.mask)
    exp = math.exp
    block = rng.random(4 * cfg.iterations).tolist()
    bi = 0
    for _ in range(cfg.iterations):
        cand = state.cand
        if not cand:
            break
        kind = block[bi]
        t1 = cand[int(block[bi + 1] * len(cand))]
        r2 = block[bi + 2]
        r_acc = block[bi + 3]
        bi += 4
        dp1, da1 = state.deltas(t1)
        base_gap = abs(state.area - volume)
        if kind < 0.5:
            new_gap = abs(state.area + da1 - volume)
            dcost = dp1 + mu * (new_gap - base_gap)
            if dcost <= 0.0 or (temp > 1e-300 and r_acc < exp(-dcost / temp)):
                state.flip(t1, dp1, da1)
                if new_gap <= feas and state.count > 0:
                    cost = state.perimeter + mu * new_gap
                    if cost < best_cost:
                        best_cost = cost
                        best_mask = list(state.mask)
        else:
            state.flip(t1, dp1, da1)
            cand = state.cand
            if not cand:
                state.flip(t1, -dp1, -da1)
            else:
                t2 = cand[int(r2 * len(cand))]
                dp2, da2 = state.deltas(t2)
                new_gap = abs(state.area + da2 - volume)
                dcost = dp1 + dp2 + mu * (new_gap - base_gap)
                if dcost <= 0.0 or (
                    temp > 1e-300 and r_acc < exp(-dcost / temp)
                ):
                    state.flip(t2, dp2, da2)
                    if new_gap <= feas and state.count > 0:
                        cost = state.perimeter + mu * new_gap
                        if cost < best_cost:
                            best_cost = cost
                            best_mask = list(state.mask)
                else:
                    state.flip(t1, -dp1, -da1)
        temp *= cooling
    return best_cost, best_mask


def _polish(state: _State, cfg: SolverConfig, max_moves: int = 5000) -> None:
    """Steepest-descent flips to a local minimum of the penalized cost,
    then try boundary slides (cheapest addition plus cheapest removal),
    then top up the area to at least the target volume."""
    mu = cfg.mu
    volume = state.volume
    moves = 0
    while moves < max_moves:
        moves += 1
        best_t, best_dp, best_da = -1, 0.0, 0.0
        best_d = -1e-12
        gap = abs(state.area - volume)
        for t in state.cand:
            dp, da = state.deltas(t)
            if state.count == 1 and da < 0:
                continue
            d = dp + mu * (abs(state.area + da - volume) - gap)
            if d < best_d:
                best_d, best_t, best_dp, best_da = d, t, dp, da
        if best_t >= 0:
            state.flip(best_t, best_dp, best_da)
            continue
        # no single flip helps; slide the boundary by one triangle
        add_t, add_dp, add_da = -1, math.inf, 0.0
        for t in state.cand:
            if state.mask[t]:
                continue
            dp, da = state.deltas(t)
            if dp < add_dp:
                add_t, add_dp, add_da = t, dp, da
        if add_t < 0:
            break
        state.flip(add_t, add_dp, add_da)
        rem_t, rem_dp, rem_da = -1, math.inf, 0.0
        if state.count > 1:
            for t in state.cand:
                if not state.mask[t]:
                    continue
                dp, da = state.deltas(t)
                if dp < rem_dp:
                    rem_t, rem_dp, rem_da = t, dp, da
        net = add_dp + rem_dp + mu * (
            abs(state.area + rem_da - volume) - gap
        )
        if rem_t >= 0 and net < -1e-12:
            state.flip(rem_t, rem_dp, rem_da)
        else:
            state.flip(add_t, -add_dp, -add_da)
            break
    while state.area < volume:
        best_t, best_dp, best_da = -1, math.inf, 0.0
        for t in state.cand:
            if state.mask[t]:
                continue
            dp, da = state.deltas(t)
            if dp < best_dp:
                best_t, best_dp, best_da = t, dp, da
        if best_t < 0:
            break
        state.flip(best_t, best_dp, best_da)


def minimize_perimeter(
    mesh: SurfaceMesh,
    volume: float,
    config: SolverConfig | None = None,
    warm_starts: list[Region] | None = None,
) -> SolverResult:
    """Search for a region of the given area with minimal cut perimeter."""
    if not mesh.is_closed():
        raise ValueError("solver needs a closed surface mesh")
    total = mesh.total_area()
    if not 0.0 < volume < total:
        raise VolumeOutOfRange(
            f"volume {volume} outside (0, {total}) for this mesh"
        )
    cfg = config if config is not None else default_config(mesh)
    feas = FEASIBILITY_FRACTION * volume
    nbrs = [tuple(int(u) for u in row) for row in mesh.tri_neighbors]
    lens = [
        tuple(float(mesh.edge_lengths[e]) for e in row)
        for row in mesh.tri_edges
    ]
    areas = [float(a) for a in mesh.areas]
    warm = list(warm_starts) if warm_starts else []

    outcomes: list[tuple[float, int, np.ndarray]] = []
    per_restart: list[float] = []
    for r in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, r])
        finalists: list[list[bool]] = []
        if r < len(warm):
            init = [bool(b) for b in warm[r].mask]
            # polish the warm region directly too, in case annealing
            # wanders off without finding anything feasible
            finalists.append(list(init))
        else:
            init = _random_blob(rng, nbrs, areas, volume)
        state = _State(nbrs, lens, areas, init, volume)
        _, best_mask = _anneal(state, cfg, rng, feas)
        if best_mask is not None:
            finalists.append(best_mask)
        best_here: tuple[float, np.ndarray] | None = None
        for mask in finalists:
            st = _State(nbrs, lens, areas, mask, volume)
            _polish(st, cfg)
            if abs(st.area - volume) > feas or st.count == 0:
                continue
            if best_here is None or st.perimeter < best_here[0]:
                best_here = (st.perimeter, np.array(st.mask, dtype=bool))
        per_restart.append(math.inf if best_here is None else best_here[0])
        if best_here is not None:
            outcomes.append((best_here[0], r, best_here[1]))

    if not outcomes:
        raise NoFeasibleRegion(
            f"no restart reached |area - {volume}| <= {feas}; "
            "increase iterations/mu or refine the mesh"
        )
    outcomes.sort(key=lambda o: (o[0], o[1]))
    _, best_r, best_mask_arr = outcomes[0]
    region = Region(mesh=mesh, mask=best_mask_arr)
    return SolverResult(
        region=region,
        perimeter=region.cut_perimeter,
        area=region.area,
        target_volume=volume,
        best_restart=best_r,
        restart_perimeters=tuple(per_restart),
        config=cfg,
    )
