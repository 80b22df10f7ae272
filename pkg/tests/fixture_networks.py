"""Deterministic fixture networks shared by the golden tests and the
golden-regeneration script (scripts/update_goldens.py)."""

from __future__ import annotations

from netviz.ingest import EdgeRecord, build_got_network
from netviz.network import Network, NetworkStyle


def basic() -> tuple[Network, dict | None]:
    g = Network()
    g.add_node(1)
    g.add_node(2)
    g.add_node(3)
    g.add_edges([(1, 2), (2, 3, 5)])
    positions = {1: (-120.5, 0.25), 2: (0.0, 60.0), 3: (133.75, -42.0)}
    return g, positions


def styled_directed() -> tuple[Network, dict | None]:
    g = Network(height="600px", width="800px", bgcolor="#101020",
                font_color="#eeeeee", directed=True)
    g.add_nodes(
        [1, 2, 3],
        value=[10, 100, 400],
        x=[21.4, 154.2, 11.2],
        y=[100.2, 23.54, 32.1],
        label=["NODE 1", "NODE 2", "NODE 3"],
        color=["#00ff1e", "#162347", "#dd4b39"],
    )
    g.add_edge(1, 2)
    g.add_edge(2, 3, weight=5)
    g.set_options('{"physics":{"solver":"forceAtlas2Based"}}')
    g.show_buttons(filter_=["physics"])
    return g, None


def got_mini() -> tuple[Network, dict | None]:
    records = [
        EdgeRecord("Eddard", "Catelyn", 9),
        EdgeRecord("Eddard", "Robert", 4),
        EdgeRecord("Catelyn", "Lysa", 2),
        EdgeRecord("Robert", "Cersei", 3),
        EdgeRecord("Eddard", "Arya", 7),
    ]
    style = NetworkStyle(height="750px", width="100%",
                         bgcolor="#222222", font_color="white")
    g = build_got_network(records, style)
    g.set_options("""
    var options = {
      "physics": {
         "repulsion": {"centralGravity": 1.3, "springConstant": 0.08,
                       "nodeDistance": 90, "damping": 0.19},
         "maxVelocity": 45, "minVelocity": 0.19,
         "solver": "repulsion", "timestep": 0.34
      }
    };
    """)
    g.show_buttons()
    return g, None


FIXTURES = {
    "basic": basic,
    "styled_directed": styled_directed,
    "got_mini": got_mini,
}
