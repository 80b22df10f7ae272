from __future__ import annotations

import numpy as np
import pytest

from netviz import LayoutNumericsError, build_quadtree


def _collect_points(tree, cell):
    """Recursive oracle: node indices contained in a cell's subtree."""
    if tree.is_leaf(cell):
        return list(tree.leaf_points(cell))
    points = []
    for child in tree.child_cells(cell):
        points.extend(_collect_points(tree, child))
    return points


def test_single_node():
    tree = build_quadtree(np.array([[3.0, 4.0]]), np.array([2.0]))
    assert tree.cell_count == 1
    assert tree.is_leaf(0)
    assert tree.mass[0] == 2.0
    assert tree.com_x[0] == 3.0
    assert tree.com_y[0] == 4.0


def test_two_symmetric_nodes():
    tree = build_quadtree(np.array([[-1.0, 0.0], [1.0, 0.0]]), np.ones(2))
    assert tree.mass[0] == 2.0
    assert tree.com_x[0] == pytest.approx(0.0, abs=1e-15)
    assert tree.com_y[0] == pytest.approx(0.0, abs=1e-15)


def test_bounds_enclose_all_points_with_margin():
    rng = np.random.default_rng(5)
    positions = rng.uniform(-50, 50, size=(40, 2))
    tree = build_quadtree(positions, np.ones(40))
    half = tree.half[0]
    assert (np.abs(positions[:, 0] - tree.center_x[0]) <= half).all()
    assert (np.abs(positions[:, 1] - tree.center_y[0]) <= half).all()
    spread = max(np.ptp(positions[:, 0]), np.ptp(positions[:, 1]))
    assert 2 * half == pytest.approx(spread * 1.1)


def test_mass_and_com_match_recursive_recomputation():
    rng = np.random.default_rng(11)
    positions = rng.uniform(-100, 100, size=(100, 2))
    masses = rng.uniform(0.5, 3.0, size=100)
    tree = build_quadtree(positions, masses)
    for cell in range(tree.cell_count):
        points = _collect_points(tree, cell)
        assert points, "no empty cells are ever allocated"
        expected_mass = masses[points].sum()
        assert tree.mass[cell] == pytest.approx(expected_mass, rel=1e-12)
        com = (masses[points, None] * positions[points]).sum(axis=0) / expected_mass
        assert tree.com_x[cell] == pytest.approx(com[0], rel=1e-12, abs=1e-12)
        assert tree.com_y[cell] == pytest.approx(com[1], rel=1e-12, abs=1e-12)


def test_every_node_in_exactly_one_leaf():
    rng = np.random.default_rng(13)
    positions = rng.uniform(-10, 10, size=(64, 2))
    tree = build_quadtree(positions, np.ones(64))
    seen: list[int] = []
    for cell in range(tree.cell_count):
        if tree.is_leaf(cell):
            seen.extend(tree.leaf_points(cell))
    assert sorted(seen) == list(range(64))


def test_internal_mass_equals_children_sum():
    rng = np.random.default_rng(17)
    positions = rng.uniform(0, 1, size=(50, 2))
    tree = build_quadtree(positions, np.ones(50))
    for cell in range(tree.cell_count):
        if not tree.is_leaf(cell):
            children = tree.child_cells(cell)
            assert tree.mass[cell] == pytest.approx(
                sum(tree.mass[c] for c in children), rel=1e-12)


def test_coincident_points_share_a_leaf():
    positions = np.array([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0], [5.0, 5.0]])
    tree = build_quadtree(positions, np.ones(4))
    leaves = [tree.leaf_points(c) for c in range(tree.cell_count) if tree.is_leaf(c)]
    sizes = sorted(len(points) for points in leaves)
    assert sizes == [1, 3]
    assert sorted(sum(leaves, [])) == [0, 1, 2, 3]


def test_weighted_radius_aggregates():
    positions = np.array([[0.0, 0.0], [10.0, 0.0]])
    tree = build_quadtree(positions, np.array([1.0, 3.0]), radii=np.array([10.0, 20.0]))
    assert tree.weighted_radius[0] == pytest.approx(1 * 10 + 3 * 20)


def test_non_finite_position_raises():
    with pytest.raises(LayoutNumericsError):
        build_quadtree(np.array([[0.0, np.nan]]), np.ones(1))


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        build_quadtree(np.zeros((0, 2)), np.zeros(0))
