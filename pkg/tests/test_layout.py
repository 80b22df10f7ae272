from __future__ import annotations

import math

import numpy as np
import pytest

from netviz import (
    LayoutNumericsError,
    Network,
    central_gravity_forces,
    initial_positions,
    repulsive_forces,
    spring_forces,
    stabilize,
    step,
)
from netviz.layout import EPS, LayoutState, bfs_levels, positions_document, positions_mapping
from netviz.options import Options, parse_options_script
from netviz.rng import SplitMix64


# ---------------------------------------------------------------------------
# Independent oracles: straightforward per-node pairwise summation, no tree.
# ---------------------------------------------------------------------------

def _hashed_direction(i: int, j: int) -> tuple[float, float]:
    a, b = (i, j) if i < j else (j, i)
    bucket = ((a * 73856093) ^ (b * 19349663)) & 1023
    angle = bucket * (2.0 * math.pi / 1024.0)
    sign = 1.0 if i > j else -1.0
    return sign * math.cos(angle), sign * math.sin(angle)


def oracle_barnes_hut(positions, radii, gravity, overlap):
    n = len(positions)
    forces = np.zeros((n, 2))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = positions[i, 0] - positions[j, 0]
            dy = positions[i, 1] - positions[j, 1]
            d = math.sqrt(dx * dx + dy * dy)
            if d < EPS:
                ux, uy = _hashed_direction(i, j)
            else:
                ux, uy = dx / d, dy / d
            dprime = max(EPS, d - overlap * (radii[i] + radii[j]))
            mag = abs(gravity) / (dprime * dprime)
            forces[i, 0] += mag * ux
            forces[i, 1] += mag * uy
    return forces


def oracle_cutoff(positions, k, node_distance):
    n = len(positions)
    forces = np.zeros((n, 2))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = positions[i, 0] - positions[j, 0]
            dy = positions[i, 1] - positions[j, 1]
            d = math.sqrt(dx * dx + dy * dy)
            if d >= node_distance:
                continue
            if d < EPS:
                ux, uy = _hashed_direction(i, j)
            else:
                ux, uy = dx / d, dy / d
            mag = k * (node_distance - d) / node_distance
            forces[i, 0] += mag * ux
            forces[i, 1] += mag * uy
    return forces


def oracle_fa2(positions, degrees, g):
    n = len(positions)
    forces = np.zeros((n, 2))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = positions[i, 0] - positions[j, 0]
            dy = positions[i, 1] - positions[j, 1]
            d = math.sqrt(dx * dx + dy * dy)
            if d < EPS:
                ux, uy = _hashed_direction(i, j)
            else:
                ux, uy = dx / d, dy / d
            mag = abs(g) * (degrees[i] + 1) * (degrees[j] + 1) / max(d, EPS)
            forces[i, 0] += mag * ux
            forces[i, 1] += mag * uy
    return forces


def _state(positions, ids=None) -> LayoutState:
    positions = np.asarray(positions, dtype=float)
    n = len(positions)
    return LayoutState(
        positions=positions,
        velocities=np.zeros((n, 2)),
        pinned=np.zeros(n, dtype=bool),
        pin_y=np.zeros(n, dtype=bool),
        ids=ids if ids is not None else list(range(n)),
    )


def _rel_err(actual, expected):
    scale = np.sqrt((expected ** 2).sum(axis=1)).max()
    denom = np.maximum(np.abs(expected), max(scale, 1e-300))
    return (np.abs(actual - expected) / denom).max()


def _random_positions(rng: SplitMix64, n: int, spread: float) -> np.ndarray:
    return np.array([[(rng.next_float() - 0.5) * spread,
                      (rng.next_float() - 0.5) * spread] for _ in range(n)])


# ---------------------------------------------------------------------------
# Repulsion
# ---------------------------------------------------------------------------

def test_barnes_hut_theta_zero_matches_oracle():
    rng = SplitMix64(99)
    opts = Options()
    for _ in range(5):
        positions = _random_positions(rng, 120, 2000.0)
        radii = np.full(120, 10.0)
        forces = repulsive_forces(_state(positions), opts, theta=0.0, radii=radii)
        expected = oracle_barnes_hut(positions, radii, -80000, 0.0)
        assert _rel_err(forces, expected) < 1e-9


def test_barnes_hut_theta_half_approximates_oracle():
    rng = SplitMix64(7)
    opts = Options()
    positions = _random_positions(rng, 200, 3000.0)
    radii = np.full(200, 10.0)
    forces = repulsive_forces(_state(positions), opts, theta=0.5, radii=radii)
    expected = oracle_barnes_hut(positions, radii, -80000, 0.0)
    assert _rel_err(forces, expected) < 5e-2


def test_barnes_hut_with_overlap_matches_oracle():
    rng = SplitMix64(3)
    opts = parse_options_script(
        '{"physics":{"barnesHut":{"overlap":0.7}}}')
    positions = _random_positions(rng, 50, 400.0)
    radii = np.linspace(5, 30, 50)
    forces = repulsive_forces(_state(positions), opts, theta=0.0, radii=radii)
    expected = oracle_barnes_hut(positions, radii, -80000, 0.7)
    assert _rel_err(forces, expected) < 1e-9


def test_coincident_nodes_finite_equal_opposite():
    opts = Options()
    positions = np.array([[5.0, 5.0], [5.0, 5.0]])
    forces = repulsive_forces(_state(positions), opts, theta=0.0)
    assert np.isfinite(forces).all()
    mags = np.sqrt((forces ** 2).sum(axis=1))
    assert mags[0] == pytest.approx(mags[1])
    assert mags[0] == pytest.approx(abs(-80000) / EPS ** 2)
    assert np.allclose(forces[0], -forces[1])


def test_repulsion_solver_cutoff_boundary():
    opts = parse_options_script('{"physics":{"solver":"repulsion"}}')
    d = opts.physics.params.nodeDistance
    positions = np.array([[0.0, 0.0], [d, 0.0]])
    forces = repulsive_forces(_state(positions), opts)
    assert np.all(forces == 0.0)


def test_repulsion_solver_matches_oracle():
    rng = SplitMix64(21)
    opts = parse_options_script(
        '{"physics":{"solver":"repulsion","repulsion":{"nodeDistance":120}}}')
    positions = _random_positions(rng, 60, 300.0)
    forces = repulsive_forces(_state(positions), opts)
    expected = oracle_cutoff(positions, 0.05, 120)
    assert _rel_err(forces, expected) < 1e-9


def test_force_atlas_matches_oracle():
    rng = SplitMix64(31)
    opts = parse_options_script('{"physics":{"solver":"forceAtlas2Based"}}')
    positions = _random_positions(rng, 40, 500.0)
    degrees = np.arange(40) % 5
    forces = repulsive_forces(_state(positions), opts, degrees=degrees.astype(float))
    expected = oracle_fa2(positions, degrees, -50)
    assert _rel_err(forces, expected) < 1e-9


def test_theta_must_be_non_negative():
    with pytest.raises(ValueError):
        repulsive_forces(_state(np.zeros((2, 2))), Options(), theta=-1.0)


# ---------------------------------------------------------------------------
# Springs and central gravity
# ---------------------------------------------------------------------------

def _two_node_net(**edge_attrs):
    net = Network()
    net.add_nodes([0, 1])
    net.add_edge(0, 1, **edge_attrs)
    return net


def test_spring_zero_at_rest_length():
    net = _two_node_net()
    opts = net.options
    L = opts.physics.spring_length()
    forces = spring_forces(net, _state([[0, 0], [L, 0]]), opts)
    assert np.allclose(forces, 0.0, atol=1e-12)


def test_spring_closed_form_at_double_length():
    net = _two_node_net()
    opts = net.options  # barnesHut: k=0.001, L=250
    forces = spring_forces(net, _state([[0, 0], [500.0, 0]]), opts)
    assert forces[0] == pytest.approx([0.25, 0.0])
    assert forces[1] == pytest.approx([-0.25, 0.0])


def test_spring_compression_pushes_apart():
    net = _two_node_net()
    forces = spring_forces(net, _state([[0, 0], [100.0, 0]]), net.options)
    assert forces[0][0] < 0
    assert forces[1][0] > 0


def test_self_loop_contributes_nothing():
    net = Network()
    net.add_node(0)
    net.add_edge(0, 0)
    forces = spring_forces(net, _state([[3.0, 4.0]]), net.options)
    assert np.all(forces == 0.0)


def test_edge_value_does_not_change_spring_force():
    plain = _two_node_net()
    weighted = _two_node_net(value=50)
    state = _state([[0, 0], [400.0, 30.0]])
    assert np.array_equal(
        spring_forces(plain, state, plain.options),
        spring_forces(weighted, state, weighted.options))


def test_central_gravity_closed_form():
    opts = Options()  # barnesHut central_gravity = 0.3
    forces = central_gravity_forces(_state([[3.0, 4.0]]), opts)
    assert np.hypot(*forces[0]) == pytest.approx(1.5)
    assert forces[0][0] < 0 and forces[0][1] < 0


def test_central_gravity_zero_at_origin_and_when_disabled():
    opts = Options()
    assert np.all(central_gravity_forces(_state([[0.0, 0.0]]), opts) == 0.0)
    zeroed = parse_options_script('{"physics":{"barnesHut":{"centralGravity":0}}}')
    forces = central_gravity_forces(_state([[10.0, -4.0]]), zeroed)
    assert np.all(forces == 0.0)


# ---------------------------------------------------------------------------
# Integration step
# ---------------------------------------------------------------------------

def test_step_fixed_point():
    opts = Options()
    state = _state([[1.0, 2.0]])
    step(state, np.zeros((1, 2)), opts)
    assert np.array_equal(state.positions, [[1.0, 2.0]])
    assert state.iteration == 1


def test_step_closed_form_damping():
    opts = parse_options_script(
        '{"physics":{"repulsion":{"damping":0.19},"timestep":0.34}}')
    state = _state([[0.0, 0.0]])
    state.velocities = np.array([[10.0, 0.0]])
    step(state, np.zeros((1, 2)), opts)
    assert state.velocities[0] == pytest.approx([8.1, 0.0])
    assert state.positions[0] == pytest.approx([2.754, 0.0])


def test_step_speed_clamp():
    opts = Options()  # maxVelocity 50
    state = _state([[0.0, 0.0]])
    # velocity after damping would be 2 * maxVelocity
    state.velocities = np.array([[100.0 / 0.91, 0.0]])
    step(state, np.zeros((1, 2)), opts)
    assert np.hypot(*state.velocities[0]) == pytest.approx(50.0)
    assert state.velocities[0][0] == pytest.approx(50.0)


def test_step_pinned_node_never_moves():
    opts = Options()
    state = _state([[1.0, 1.0], [2.0, 2.0]])
    state.pinned[0] = True
    step(state, np.full((2, 2), 100.0), opts)
    assert np.array_equal(state.positions[0], [1.0, 1.0])
    assert not np.array_equal(state.positions[1], [2.0, 2.0])


def test_step_pin_y_locks_y_only():
    opts = Options()
    state = _state([[1.0, 1.0]])
    state.pin_y[0] = True
    step(state, np.array([[10.0, 10.0]]), opts)
    assert state.positions[0][1] == 1.0
    assert state.positions[0][0] > 1.0


def test_step_non_finite_force_names_node():
    opts = Options()
    state = _state([[0.0, 0.0], [1.0, 1.0]], ids=["a", "b"])
    with pytest.raises(LayoutNumericsError, match="'b'"):
        step(state, np.array([[0.0, 0.0], [np.nan, 0.0]]), opts)


# ---------------------------------------------------------------------------
# Global force properties
# ---------------------------------------------------------------------------

def _mixed_network(rng: SplitMix64, n: int, solver: str) -> Network:
    net = Network()
    net.add_nodes(list(range(n)))
    for k in range(1, n):
        net.add_edge(int(rng.next_float() * k), k)
    net.set_options('{"physics":{"solver":"%s","%s":{"centralGravity":0}}}'
                    % (solver, solver)
                    if solver != "barnesHut" else
                    '{"physics":{"solver":"barnesHut","barnesHut":{"centralGravity":0}}}')
    return net


@pytest.mark.parametrize("solver", ["barnesHut", "repulsion",
                                    "forceAtlas2Based", "hierarchicalRepulsion"])
def test_momentum_conservation(solver):
    rng = SplitMix64(hash(solver) & 0xFFFF)
    for _ in range(10):
        n = 12 + int(rng.next_float() * 30)
        net = _mixed_network(rng, n, solver)
        state = initial_positions(net, seed=5, opts=net.options)
        state.pin_y[:] = False  # isolate the force property from level locking
        degrees = np.asarray(net.degrees(), dtype=float)
        forces = repulsive_forces(state, net.options, theta=0.0, degrees=degrees)
        forces += spring_forces(net, state, net.options)
        total = forces.sum(axis=0)
        magnitude_sum = np.sqrt((forces ** 2).sum(axis=1)).sum()
        assert np.hypot(*total) <= 1e-9 * max(magnitude_sum, 1e-300)


@pytest.mark.parametrize("solver", ["barnesHut", "repulsion", "forceAtlas2Based"])
def test_translation_equivariance(solver):
    rng = SplitMix64(404)
    net = _mixed_network(rng, 25, solver)
    state = initial_positions(net, seed=2, opts=net.options)
    degrees = np.asarray(net.degrees(), dtype=float)

    def non_central(st):
        forces = repulsive_forces(st, net.options, theta=0.0, degrees=degrees)
        return forces + spring_forces(net, st, net.options)

    base = non_central(state)
    shifted = state.copy()
    shifted.positions = shifted.positions + np.array([137.25, -58.5])
    moved = non_central(shifted)
    scale = np.maximum(np.abs(base), np.sqrt((base ** 2).sum(axis=1)).max())
    assert (np.abs(moved - base) / scale).max() < 1e-12


# ---------------------------------------------------------------------------
# Initial placement
# ---------------------------------------------------------------------------

def test_explicit_coordinates_pin_nodes():
    net = Network()
    net.add_nodes([1, 2, 3], x=[21.4, 154.2, 11.2], y=[100.2, 23.54, 32.1])
    state = initial_positions(net, seed=0)
    assert np.array_equal(state.positions,
                          [[21.4, 100.2], [154.2, 23.54], [11.2, 32.1]])
    assert state.pinned.all()


def test_same_seed_identical_state():
    net = Network()
    net.add_nodes(list(range(40)))
    a = initial_positions(net, seed=9)
    b = initial_positions(net, seed=9)
    assert np.array_equal(a.positions, b.positions)
    assert np.array_equal(a.velocities, b.velocities)
    c = initial_positions(net, seed=10)
    assert not np.array_equal(a.positions, c.positions)


def test_empty_network_state():
    state = initial_positions(Network(), seed=0)
    assert state.positions.shape == (0, 2)
    assert state.ids == []


def test_positions_land_in_disc():
    net = Network()
    net.add_nodes(list(range(64)))
    state = initial_positions(net, seed=3)
    limit = net.options.physics.spring_length() * math.sqrt(64)
    assert (np.sqrt((state.positions ** 2).sum(axis=1)) <= limit).all()


def test_placement_consumes_two_draws_per_free_node():
    net = Network()
    net.add_node("fixed", x=5.0, y=6.0)
    net.add_node("free")
    state = initial_positions(net, seed=123)
    rng = SplitMix64(123)
    u1, u2 = rng.next_float(), rng.next_float()
    radius = net.options.physics.spring_length() * math.sqrt(2) * math.sqrt(u1)
    angle = 2 * math.pi * u2
    assert state.positions[1] == pytest.approx(
        [radius * math.cos(angle), radius * math.sin(angle)])


def test_partial_coordinate_kept_but_unpinned():
    net = Network()
    net.add_node(1, x=42.0)
    state = initial_positions(net, seed=0)
    assert state.positions[0][0] == 42.0
    assert not state.pinned[0]


# ---------------------------------------------------------------------------
# Stabilization
# ---------------------------------------------------------------------------

def test_stabilize_empty_network():
    state, report = stabilize(Network())
    assert report.iterations_used == 0
    assert report.converged
    assert state.positions.shape == (0, 2)


def test_stabilize_spring_only_reaches_rest_length():
    net = Network()
    net.add_nodes([0, 1])
    net.add_edge(0, 1)
    # Overdamped so termination happens by creep, not at an oscillation
    # turnaround where speed dips below the threshold at large amplitude.
    net.set_options("""
    var options = {"physics": {"solver": "repulsion",
      "repulsion": {"centralGravity": 0, "nodeDistance": 1,
                    "springConstant": 0.2, "springLength": 200,
                    "damping": 0.5}}}
    """)
    state, report = stabilize(net, seed=0)
    assert report.converged
    separation = np.hypot(*(state.positions[1] - state.positions[0]))
    assert abs(separation - 200) / 200 < 0.01


def test_stabilize_deterministic(got_csv_text):
    from netviz.ingest import build_got_network, parse_edge_csv
    net = build_got_network(parse_edge_csv(got_csv_text))
    a_state, a_report = stabilize(net, seed=0)
    b_state, b_report = stabilize(net, seed=0)
    assert np.array_equal(a_state.positions, b_state.positions)
    assert np.array_equal(a_state.velocities, b_state.velocities)
    assert a_report == b_report


def test_stabilize_converges_on_fixture_graph(got_csv_text):
    from netviz.ingest import build_got_network, parse_edge_csv
    net = build_got_network(parse_edge_csv(got_csv_text))
    state, report = stabilize(net, seed=0)
    assert report.converged
    assert report.iterations_used <= 1000
    assert report.final_max_speed < net.options.physics.minVelocity


def test_stabilize_report_invariant():
    net = Network()
    net.add_nodes(list(range(8)))
    net.add_edges([(k, k + 1) for k in range(7)])
    net.options.physics.stabilization.max_iterations = 3  # force early stop
    state, report = stabilize(net, seed=0)
    assert report.converged == (report.final_max_speed
                                < net.options.physics.minVelocity)
    assert not report.converged


def test_stabilize_keeps_pinned_nodes():
    net = Network()
    net.add_node("a", x=12.0, y=-7.0)
    net.add_nodes(["b", "c"])
    net.add_edges([("a", "b"), ("b", "c")])
    state, report = stabilize(net, seed=1)
    assert np.array_equal(state.positions[0], [12.0, -7.0])
    assert np.array_equal(state.velocities[0], [0.0, 0.0])


def test_stabilize_disabled_physics_returns_initial():
    net = Network()
    net.add_nodes([1, 2])
    net.add_edge(1, 2)
    net.set_options('{"physics":{"enabled":false}}')
    state, report = stabilize(net, seed=4)
    assert report.iterations_used == 0
    assert np.array_equal(state.positions, initial_positions(net, 4).positions)


def test_hierarchical_levels_and_locking():
    net = Network()
    net.add_nodes(["root", "mid1", "mid2", "leaf"])
    net.add_edges([("root", "mid1"), ("root", "mid2"), ("mid1", "leaf")])
    net.set_options('{"physics":{"solver":"hierarchicalRepulsion"}}')
    assert bfs_levels(net) == [0, 1, 1, 2]
    spacing = net.options.physics.spring_length()
    state = initial_positions(net, seed=0)
    assert list(state.positions[:, 1]) == [0.0, spacing, spacing, 2 * spacing]
    assert state.pin_y.all()
    stabilized, _ = stabilize(net, seed=0)
    assert list(stabilized.positions[:, 1]) == [0.0, spacing, spacing, 2 * spacing]


def test_bfs_levels_multiple_components():
    net = Network()
    net.add_nodes([1, 2, 3, 4])
    net.add_edge(1, 2)
    assert bfs_levels(net) == [0, 1, 0, 0]


# ---------------------------------------------------------------------------
# Positions document
# ---------------------------------------------------------------------------

def test_positions_document_round_trip():
    net = Network()
    net.add_nodes(["a", 2])
    state, report = stabilize(net, seed=0)
    doc = positions_document(state, report)
    assert doc["converged"] is True
    assert [entry["id"] for entry in doc["positions"]] == ["a", 2]
    mapping = positions_mapping(doc)
    assert mapping["a"] == (doc["positions"][0]["x"], doc["positions"][0]["y"])
