"""Deterministic force-directed layout.

Force model, shared by every solver:

  repulsion   barnesHut: |gravity| * m_i * m_j / d'^2 pushing nodes apart,
              d' = max(EPS, d - overlap * (r_i + r_j)), evaluated through a
              quadtree whose cells stand in for their center of mass when
              cell_side / distance < theta (theta = 0 is exact pairwise).
              repulsion/hierarchicalRepulsion: springConstant *
              (nodeDistance - d) / nodeDistance inside the nodeDistance
              cutoff, exact pairwise. forceAtlas2Based: |gravitationalConstant|
              * (deg_i + 1) * (deg_j + 1) / d, exact pairwise.
  springs     Hooke force k * (d - L) along each edge; k and L come from the
              active solver block. Zero-length edges contribute nothing.
  gravity     harmonic pull toward the origin: central_gravity * m * |p|.

Integration is semi-implicit Euler with multiplicative damping and a hard
speed clamp:

  v' = (v + (F / m) * dt) * (1 - damping), |v'| <= maxVelocity, p' = p + v' * dt

Node mass is 1 everywhere. All operations are pure functions of their
inputs and single-threaded, so a (network, options, seed) triple always
reproduces bit-identical positions.

Nodes closer than EPS get a deterministic separation direction derived
from the index pair:

  a, b = sorted(i, j); angle = ((a * 73856093) xor (b * 19349663)) mod 1024
  direction = (cos, sin)(angle * 2 * pi / 1024), positive on the larger index
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import LayoutNumericsError
from .network import Network, scaled_node_radii
from .options import Options
from .quadtree import QuadTree, build_quadtree
from .rng import SplitMix64

EPS = 0.1  # px; repulsion distance floor and coincidence threshold


@dataclass
class LayoutState:
    """Per-node simulation state, index-aligned with the network's node order."""

    positions: np.ndarray          # (n, 2) float64
    velocities: np.ndarray         # (n, 2) float64
    pinned: np.ndarray             # (n,) bool; node never moves
    pin_y: np.ndarray              # (n,) bool; y locked (hierarchical levels)
    iteration: int = 0
    ids: list = field(default_factory=list)

    def copy(self) -> "LayoutState":
        return LayoutState(
            positions=self.positions.copy(),
            velocities=self.velocities.copy(),
            pinned=self.pinned.copy(),
            pin_y=self.pin_y.copy(),
            iteration=self.iteration,
            ids=list(self.ids),
        )


@dataclass
class ConvergenceReport:
    iterations_used: int
    final_max_speed: float
    converged: bool


def bfs_levels(net: Network) -> list[int]:
    """Hop distance from the first node of each component, insertion order.

    Direction is ignored; components are rooted at their first-inserted node.
    """
    index = {node.id: k for k, node in enumerate(net.nodes)}
    neighbors: list[list[int]] = [[] for _ in net.nodes]
    for edge in net.edges:
        i, j = index[edge.source], index[edge.target]
        neighbors[i].append(j)
        neighbors[j].append(i)
    levels = [-1] * len(net.nodes)
    for start in range(len(net.nodes)):
        if levels[start] != -1:
            continue
        levels[start] = 0
        queue = deque([start])
        while queue:
            k = queue.popleft()
            for j in neighbors[k]:
                if levels[j] == -1:
                    levels[j] = levels[k] + 1
                    queue.append(j)
    return levels


def initial_positions(net: Network, seed: int = 0, opts: Options | None = None) -> LayoutState:
    """Seeded starting state.

    Nodes with explicit x and y keep them and are pinned; the rest land
    uniformly in a disc of radius spring_length * sqrt(n), two generator
    draws per unplaced node in insertion order. The hierarchical solver
    additionally stacks nodes on y = level * springLength and locks y.
    """
    opts = opts if opts is not None else net.options
    n = len(net.nodes)
    positions = np.zeros((n, 2))
    pinned = np.zeros(n, dtype=bool)
    pin_y = np.zeros(n, dtype=bool)
    rng = SplitMix64(seed)
    radius = opts.physics.spring_length() * math.sqrt(n) if n else 0.0

    for k, node in enumerate(net.nodes):
        if node.x is not None and node.y is not None:
            positions[k] = (node.x, node.y)
            pinned[k] = True
            continue
        u1 = rng.next_float()
        u2 = rng.next_float()
        r = radius * math.sqrt(u1)
        angle = 2.0 * math.pi * u2
        positions[k] = (r * math.cos(angle), r * math.sin(angle))
        if node.x is not None:
            positions[k, 0] = node.x
        if node.y is not None:
            positions[k, 1] = node.y

    if opts.physics.solver == "hierarchicalRepulsion" and n:
        spacing = opts.physics.spring_length()
        for k, level in enumerate(bfs_levels(net)):
            if not pinned[k]:
                positions[k, 1] = level * spacing
                pin_y[k] = True

    return LayoutState(
        positions=positions,
        velocities=np.zeros((n, 2)),
        pinned=pinned,
        pin_y=pin_y,
        iteration=0,
        ids=[node.id for node in net.nodes],
    )


def _unit_directions(dx, dy, d, i_idx, j_idx):
    """Unit vectors from j toward i, with the hashed fallback below EPS."""
    safe = np.where(d > 0, d, 1.0)
    ux = dx / safe
    uy = dy / safe
    near = d < EPS
    if near.any():
        a = np.minimum(i_idx, j_idx).astype(np.int64)
        b = np.maximum(i_idx, j_idx).astype(np.int64)
        bucket = ((a * 73856093) ^ (b * 19349663)) & 1023
        angle = bucket * (2.0 * np.pi / 1024.0)
        sign = np.where(i_idx > j_idx, 1.0, -1.0)
        ux = np.where(near, sign * np.cos(angle), ux)
        uy = np.where(near, sign * np.sin(angle), uy)
    return ux, uy


def _bh_pair_accumulate(fx, fy, px, py, radii, i_idx, j_idx, gravity_abs, overlap):
    dx = px[i_idx] - px[j_idx]
    dy = py[i_idx] - py[j_idx]
    d = np.sqrt(dx * dx + dy * dy)
    ux, uy = _unit_directions(dx, dy, d, i_idx, j_idx)
    dprime = np.maximum(EPS, d - overlap * (radii[i_idx] + radii[j_idx]))
    mag = gravity_abs / (dprime * dprime)
    np.add.at(fx, i_idx, mag * ux)
    np.add.at(fy, i_idx, mag * uy)


def _barnes_hut_repulsion(tree: QuadTree, positions, radii, gravity, overlap, theta):
    """Quadtree repulsion; the (node, cell) frontier advances one tree level
    per pass so the arithmetic stays vectorized."""
    n = len(positions)
    px = positions[:, 0]
    py = positions[:, 1]
    fx = np.zeros(n)
    fy = np.zeros(n)
    gravity_abs = abs(gravity)

    ti = np.arange(n, dtype=np.int64)
    ci = np.zeros(n, dtype=np.int64)
    while ti.size:
        leaf = tree.head[ci] >= 0
        if leaf.any():
            l_ti = ti[leaf]
            pt = tree.head[ci[leaf]].astype(np.int64)
            while (pt >= 0).any():
                active = pt >= 0
                a_ti = l_ti[active]
                a_pt = pt[active]
                pair = a_ti != a_pt
                if pair.any():
                    _bh_pair_accumulate(fx, fy, px, py, radii,
                                        a_ti[pair], a_pt[pair], gravity_abs, overlap)
                nxt = pt.copy()
                nxt[active] = tree.next_point[pt[active]]
                pt = nxt

        internal = ~leaf
        if not internal.any():
            break
        i_ti = ti[internal]
        i_ci = ci[internal]
        dx = px[i_ti] - tree.com_x[i_ci]
        dy = py[i_ti] - tree.com_y[i_ci]
        d = np.sqrt(dx * dx + dy * dy)
        side = 2.0 * tree.half[i_ci]
        inside = (np.abs(px[i_ti] - tree.center_x[i_ci]) <= tree.half[i_ci]) & (
            np.abs(py[i_ti] - tree.center_y[i_ci]) <= tree.half[i_ci])
        approx = ~inside & (side < theta * d)
        if approx.any():
            a_ti = i_ti[approx]
            a_ci = i_ci[approx]
            ad = d[approx]
            cell_radius = tree.weighted_radius[a_ci] / tree.mass[a_ci]
            dprime = np.maximum(EPS, ad - overlap * (radii[a_ti] + cell_radius))
            mag = gravity_abs * tree.mass[a_ci] / (dprime * dprime)
            np.add.at(fx, a_ti, mag * dx[approx] / ad)
            np.add.at(fy, a_ti, mag * dy[approx] / ad)
        opened = ~approx
        o_ti = np.repeat(i_ti[opened], 4)
        o_ci = tree.children[i_ci[opened]].ravel().astype(np.int64)
        keep = o_ci >= 0
        ti = o_ti[keep]
        ci = o_ci[keep]

    return np.column_stack([fx, fy])


def _cutoff_repulsion(positions, spring_constant, node_distance):
    n = len(positions)
    forces = np.zeros((n, 2))
    if n < 2:
        return forces
    x = positions[:, 0]
    y = positions[:, 1]
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    d = np.sqrt(dx * dx + dy * dy)
    np.fill_diagonal(d, np.inf)
    mag = np.where(d < node_distance,
                   spring_constant * (node_distance - d) / node_distance, 0.0)
    i_idx, j_idx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ux, uy = _unit_directions(dx, dy, d, i_idx, j_idx)
    forces[:, 0] = (mag * ux).sum(axis=1)
    forces[:, 1] = (mag * uy).sum(axis=1)
    return forces


def _degree_repulsion(positions, degrees, gravitational_constant):
    n = len(positions)
    forces = np.zeros((n, 2))
    if n < 2:
        return forces
    x = positions[:, 0]
    y = positions[:, 1]
    dx = x[:, None] - x[None, :]
    dy = y[:, None] - y[None, :]
    d = np.sqrt(dx * dx + dy * dy)
    np.fill_diagonal(d, np.inf)
    mass = np.asarray(degrees, dtype=float) + 1.0
    mag = abs(gravitational_constant) * mass[:, None] * mass[None, :] / np.maximum(d, EPS)
    np.fill_diagonal(mag, 0.0)
    i_idx, j_idx = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ux, uy = _unit_directions(dx, dy, d, i_idx, j_idx)
    forces[:, 0] = (mag * ux).sum(axis=1)
    forces[:, 1] = (mag * uy).sum(axis=1)
    return forces


def repulsive_forces(
    state: LayoutState,
    opts: Options,
    theta: float = 0.5,
    radii: np.ndarray | None = None,
    degrees: np.ndarray | None = None,
) -> np.ndarray:
    """Per-node repulsion for the active solver; theta >= 0 (0 = exact)."""
    if theta < 0:
        raise ValueError("theta must be >= 0")
    n = len(state.positions)
    if n < 2:
        return np.zeros((n, 2))
    physics = opts.physics
    params = physics.params
    if radii is None:
        radii = np.full(n, 10.0)
    if physics.solver == "barnesHut":
        tree = build_quadtree(state.positions, np.ones(n), radii)
        return _barnes_hut_repulsion(tree, state.positions, radii,
                                     params.gravity, params.overlap, theta)
    if physics.solver in ("repulsion", "hierarchicalRepulsion"):
        return _cutoff_repulsion(state.positions, params.springConstant,
                                 params.nodeDistance)
    if degrees is None:
        degrees = np.zeros(n)
    return _degree_repulsion(state.positions, degrees, params.gravitationalConstant)


def _spring_accumulate(forces, positions, src, dst, spring_constant, spring_length):
    delta = positions[dst] - positions[src]
    d = np.sqrt((delta * delta).sum(axis=1))
    live = d > 0
    mag = np.where(live, spring_constant * (d - spring_length), 0.0)
    unit = delta / np.where(live, d, 1.0)[:, None]
    contrib = mag[:, None] * unit
    np.add.at(forces, src, contrib)
    np.add.at(forces, dst, -contrib)


def spring_forces(net: Network, state: LayoutState, opts: Options) -> np.ndarray:
    """Hooke forces along the network's edges (equal and opposite per edge)."""
    n = len(state.positions)
    forces = np.zeros((n, 2))
    if not net.edges:
        return forces
    src = np.array([net.node_index(e.source) for e in net.edges])
    dst = np.array([net.node_index(e.target) for e in net.edges])
    _spring_accumulate(forces, state.positions, src, dst,
                       opts.physics.spring_constant(), opts.physics.spring_length())
    return forces


def central_gravity_forces(state: LayoutState, opts: Options) -> np.ndarray:
    """Harmonic pull toward the origin, per node."""
    return -opts.physics.central_gravity() * state.positions


def step(state: LayoutState, total_forces: np.ndarray, opts: Options) -> LayoutState:
    """Advance one timestep in place (also returns the state for chaining)."""
    finite = np.isfinite(total_forces).all(axis=1)
    if not finite.all():
        bad = int(np.argmin(finite))
        raise LayoutNumericsError(state.ids[bad] if state.ids else bad)
    physics = opts.physics
    dt = physics.timestep
    v = (state.velocities + total_forces * dt) * (1.0 - physics.damping())
    speed = np.sqrt((v * v).sum(axis=1))
    over = speed > physics.maxVelocity
    if over.any():
        scale = np.where(over, physics.maxVelocity / np.where(speed > 0, speed, 1.0), 1.0)
        v = v * scale[:, None]
    v[state.pinned] = 0.0
    v[state.pin_y, 1] = 0.0
    state.velocities = v
    state.positions = state.positions + v * dt
    state.iteration += 1
    return state


def total_forces(
    net: Network,
    state: LayoutState,
    opts: Options,
    theta: float = 0.5,
    radii: np.ndarray | None = None,
    degrees: np.ndarray | None = None,
) -> np.ndarray:
    forces = repulsive_forces(state, opts, theta, radii=radii, degrees=degrees)
    forces += spring_forces(net, state, opts)
    forces += central_gravity_forces(state, opts)
    return forces


def stabilize(
    net: Network,
    opts: Options | None = None,
    seed: int = 0,
    theta: float = 0.0,
) -> tuple[LayoutState, ConvergenceReport]:
    """Iterate force-sum + step until the fastest node drops below
    minVelocity or the iteration cap is hit. Non-convergence is reported,
    not raised.

    Repulsion is evaluated exactly by default (theta 0): the tree
    approximation's force error sits far above the minVelocity termination
    threshold, which would leave no reachable fixed point.
    """
    opts = opts if opts is not None else net.options
    opts.validate()
    state = initial_positions(net, seed, opts)
    n = len(net.nodes)
    if n == 0 or not opts.physics.enabled or not opts.physics.stabilization.enabled:
        return state, ConvergenceReport(0, 0.0, True)

    radii = np.asarray(scaled_node_radii(net))
    degrees = np.asarray(net.degrees(), dtype=float)
    src = np.array([net.node_index(e.source) for e in net.edges], dtype=np.int64)
    dst = np.array([net.node_index(e.target) for e in net.edges], dtype=np.int64)
    cg = opts.physics.central_gravity()
    k = opts.physics.spring_constant()
    length = opts.physics.spring_length()
    max_iter = opts.physics.stabilization.max_iterations
    min_velocity = opts.physics.minVelocity

    max_speed = math.inf
    for iteration in range(1, max_iter + 1):
        forces = repulsive_forces(state, opts, theta, radii=radii, degrees=degrees)
        if len(src):
            _spring_accumulate(forces, state.positions, src, dst, k, length)
        forces -= cg * state.positions
        step(state, forces, opts)
        max_speed = float(np.sqrt((state.velocities ** 2).sum(axis=1)).max())
        if max_speed < min_velocity:
            return state, ConvergenceReport(iteration, max_speed, True)
    return state, ConvergenceReport(max_iter, max_speed, False)


def positions_document(state: LayoutState, report: ConvergenceReport) -> dict:
    """JSON-ready positions document consumed by the renderer and viewer."""
    return {
        "converged": report.converged,
        "iterations": report.iterations_used,
        "positions": [
            {"id": node_id, "x": float(state.positions[k, 0]), "y": float(state.positions[k, 1])}
            for k, node_id in enumerate(state.ids)
        ],
    }


def positions_mapping(document: dict) -> dict:
    """id -> (x, y) lookup from a positions document."""
    return {entry["id"]: (entry["x"], entry["y"]) for entry in document["positions"]}
