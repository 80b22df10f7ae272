#!/usr/bin/env python3
"""Regenerate fixtures/conformance/*.json.

Each fixture freezes a simulation scenario: inputs (graph, options, initial
state) plus the state after a fixed number of ticks as computed by this
package. The browser viewer's physics loop must reproduce the expected
state within 1e-6 per component.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

import numpy as np  # noqa: E402

from netviz.layout import (  # noqa: E402
    central_gravity_forces,
    initial_positions,
    repulsive_forces,
    spring_forces,
    step,
)
from netviz.network import Network, scaled_node_radii  # noqa: E402
from netviz.options import options_to_dict  # noqa: E402

TICKS = 100


def _barnes_hut_overlap() -> Network:
    net = Network()
    net.add_nodes(list(range(8)), value=[1, 2, 3, 4, 5, 6, 7, 8])
    net.add_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 4)])
    net.set_options('{"physics":{"barnesHut":{"overlap":0.5,"gravity":-2000,'
                    '"springLength":120,"springStrength":0.02}}}')
    return net


def _hierarchical_pinned() -> Network:
    net = Network()
    net.add_node("root", x=0.0, y=0.0)
    net.add_nodes(["a", "b", "c", "d", "e"])
    net.add_edges([("root", "a"), ("root", "b"), ("a", "c"), ("a", "d"), ("b", "e")])
    net.set_options('{"physics":{"solver":"hierarchicalRepulsion",'
                    '"hierarchicalRepulsion":{"nodeDistance":150,"springConstant":0.02,'
                    '"centralGravity":0.1},"timestep":0.4}}')
    return net


def _force_atlas_clamped() -> Network:
    net = Network()
    net.add_nodes(list(range(7)))
    net.add_edges([(0, k) for k in range(1, 7)] + [(1, 2), (3, 4)])
    net.set_options('{"physics":{"solver":"forceAtlas2Based",'
                    '"forceAtlas2Based":{"gravitationalConstant":-200},'
                    '"maxVelocity":25,"timestep":0.6}}')
    return net


SCENARIOS = {
    "barnes_hut_overlap": (_barnes_hut_overlap, 11),
    "hierarchical_pinned": (_hierarchical_pinned, 22),
    "force_atlas_clamped": (_force_atlas_clamped, 33),
}


def _pairs(values: np.ndarray) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in values]


def build_fixture(name: str, make, seed: int) -> dict:
    net = make()
    opts = net.options
    state = initial_positions(net, seed, opts)
    radii = np.asarray(scaled_node_radii(net))
    degrees = np.asarray(net.degrees(), dtype=float)

    index = {node.id: k for k, node in enumerate(net.nodes)}
    fixture = {
        "name": name,
        "ticks": TICKS,
        "theta": 0.0,
        "options": options_to_dict(opts),
        "ids": [node.id for node in net.nodes],
        "edges": [[index[e.source], index[e.target]] for e in net.edges],
        "radii": [float(r) for r in radii],
        "degrees": [float(d) for d in degrees],
        "pinned": [bool(p) for p in state.pinned],
        "pinY": [bool(p) for p in state.pin_y],
        "initial": {
            "positions": _pairs(state.positions),
            "velocities": _pairs(state.velocities),
        },
    }

    for _ in range(TICKS):
        forces = repulsive_forces(state, opts, theta=0.0, radii=radii, degrees=degrees)
        forces += spring_forces(net, state, opts)
        forces += central_gravity_forces(state, opts)
        step(state, forces, opts)

    fixture["expected"] = {
        "positions": _pairs(state.positions),
        "velocities": _pairs(state.velocities),
    }
    return fixture


def main() -> None:
    out_dir = ROOT / "fixtures" / "conformance"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (make, seed) in SCENARIOS.items():
        fixture = build_fixture(name, make, seed)
        path = out_dir / f"{name}.json"
        path.write_text(json.dumps(fixture, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
