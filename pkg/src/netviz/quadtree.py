"""Quadtree spatial aggregation for the n-body repulsion approximation.

Cells are stored as flat parallel arrays so force traversal can run
vectorized over (node, cell) frontiers. Leaves hold a chain of point
indices (`head` into `next_point`); below the depth cap a leaf holds one
point, at the cap coincident points share a chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LayoutNumericsError

_MAX_DEPTH = 48


@dataclass
class QuadTree:
    center_x: np.ndarray      # (cells,) cell center
    center_y: np.ndarray
    half: np.ndarray          # (cells,) half of the cell side
    mass: np.ndarray          # (cells,) total mass
    com_x: np.ndarray         # (cells,) center of mass
    com_y: np.ndarray
    weighted_radius: np.ndarray  # (cells,) sum of mass * point radius
    children: np.ndarray      # (cells, 4) int32 indices, -1 = none
    head: np.ndarray          # (cells,) first point index of a leaf chain, -1 = internal
    next_point: np.ndarray    # (points,) chain links, -1 = end

    @property
    def cell_count(self) -> int:
        return len(self.mass)

    def is_leaf(self, cell: int) -> bool:
        return self.head[cell] >= 0

    def leaf_points(self, cell: int) -> list[int]:
        points = []
        p = int(self.head[cell])
        while p >= 0:
            points.append(p)
            p = int(self.next_point[p])
        return points

    def child_cells(self, cell: int) -> list[int]:
        return [int(c) for c in self.children[cell] if c >= 0]


def build_quadtree(
    positions: np.ndarray,
    masses: np.ndarray,
    radii: np.ndarray | None = None,
) -> QuadTree:
    """Build a quadtree over (n, 2) positions.

    Bounds are the smallest enclosing square expanded by 10%. Requires at
    least one point; all coordinates must be finite.
    """
    n = len(positions)
    if n == 0:
        raise ValueError("quadtree requires at least one point")
    finite = np.isfinite(positions).all(axis=1)
    if not finite.all():
        raise LayoutNumericsError(int(np.argmin(finite)))
    if radii is None:
        radii = np.zeros(n)

    x = positions[:, 0]
    y = positions[:, 1]
    cx = (x.min() + x.max()) / 2.0
    cy = (y.min() + y.max()) / 2.0
    side = max(x.max() - x.min(), y.max() - y.min())
    if side == 0.0:
        side = 1.0
    half_root = side * 1.1 / 2.0

    center_x = [cx]
    center_y = [cy]
    half = [half_root]
    children: list[list[int]] = [[-1, -1, -1, -1]]
    head = [-1]
    next_point = np.full(n, -1, dtype=np.int32)

    def new_cell(ccx: float, ccy: float, ch: float) -> int:
        center_x.append(ccx)
        center_y.append(ccy)
        half.append(ch)
        children.append([-1, -1, -1, -1])
        head.append(-1)
        return len(head) - 1

    def child_for(cell: int, px: float, py: float) -> int:
        qx = 1 if px > center_x[cell] else 0
        qy = 1 if py > center_y[cell] else 0
        q = qy * 2 + qx
        child = children[cell][q]
        if child == -1:
            h = half[cell] / 2.0
            ccx = center_x[cell] + (h if qx else -h)
            ccy = center_y[cell] + (h if qy else -h)
            child = new_cell(ccx, ccy, h)
            children[cell][q] = child
        return child

    for i in range(n):
        px = float(x[i])
        py = float(y[i])
        cell = 0
        depth = 0
        while True:
            if head[cell] >= 0:
                # Occupied leaf: chain at the depth cap, split otherwise.
                if depth >= _MAX_DEPTH:
                    next_point[i] = head[cell]
                    head[cell] = i
                    break
                old = head[cell]
                head[cell] = -1
                old_child = child_for(cell, float(x[old]), float(y[old]))
                head[old_child] = old
                continue
            if children[cell] == [-1, -1, -1, -1]:
                head[cell] = i
                break
            cell = child_for(cell, px, py)
            depth += 1

    cells = len(head)
    tree = QuadTree(
        center_x=np.asarray(center_x),
        center_y=np.asarray(center_y),
        half=np.asarray(half),
        mass=np.zeros(cells),
        com_x=np.zeros(cells),
        com_y=np.zeros(cells),
        weighted_radius=np.zeros(cells),
        children=np.asarray(children, dtype=np.int32),
        head=np.asarray(head, dtype=np.int32),
        next_point=next_point,
    )

    # Children are always allocated after their parent, so one reverse pass
    # aggregates mass and center of mass bottom-up.
    for cell in range(cells - 1, -1, -1):
        if tree.head[cell] >= 0:
            p = int(tree.head[cell])
            while p >= 0:
                m = masses[p]
                tree.mass[cell] += m
                tree.com_x[cell] += m * x[p]
                tree.com_y[cell] += m * y[p]
                tree.weighted_radius[cell] += m * radii[p]
                p = int(tree.next_point[p])
        else:
            # com arrays hold mass-weighted sums until the final pass.
            for child in tree.children[cell]:
                if child >= 0:
                    tree.mass[cell] += tree.mass[child]
                    tree.com_x[cell] += tree.com_x[child]
                    tree.com_y[cell] += tree.com_y[child]
                    tree.weighted_radius[cell] += tree.weighted_radius[child]
    nonzero = tree.mass > 0
    tree.com_x[nonzero] /= tree.mass[nonzero]
    tree.com_y[nonzero] /= tree.mass[nonzero]
    return tree
