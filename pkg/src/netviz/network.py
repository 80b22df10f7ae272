"""Declarative network container: nodes, edges, style, physics options.

Node ids are integers or strings; the two kinds never collide (1 and "1"
are distinct nodes). Insertion order is preserved everywhere it can be
observed: the printed representation, emitted datasets, and layout arrays.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import BroadcastError, NodeNotFoundError, StyleError
from .options import (
    BarnesHutParams,
    Options,
    WidgetSpec,
    apply_script,
    select_configurator_widgets,
)

NodeId = int | str

_CSS_LENGTH = re.compile(r"^\d+(\.\d+)?(px|%)$")


def _check_css_length(value: str, name: str) -> str:
    if not isinstance(value, str) or not _CSS_LENGTH.match(value):
        raise StyleError(f"{name} must look like '500px' or '100%', got {value!r}")
    return value


@dataclass
class NetworkStyle:
    height: str = "500px"
    width: str = "500px"
    bgcolor: str = "#ffffff"
    font_color: str = "black"

    def __post_init__(self):
        _check_css_length(self.height, "height")
        _check_css_length(self.width, "width")


@dataclass
class Node:
    id: NodeId
    label: str
    size: float | None = None        # raw radius, px
    value: float | None = None       # population-scaled radius driver
    title: str | None = None         # hover tooltip, markup allowed
    x: float | None = None
    y: float | None = None
    color: str | None = None


@dataclass
class Edge:
    source: NodeId
    target: NodeId
    value: float | None = None       # population-scaled width driver
    width: float | None = None       # raw width, px
    title: str | None = None


_NODE_ATTRS = ("size", "value", "title", "x", "y", "color")


class Network:
    """Container of nodes, edges, style, and physics options.

    Single-writer: mutation is not thread-safe; reads are.
    """

    def __init__(
        self,
        height: str = "500px",
        width: str = "500px",
        bgcolor: str = "#ffffff",
        font_color: str = "black",
        directed: bool = False,
        notebook: bool = False,
    ):
        self.style = NetworkStyle(height=height, width=width,
                                  bgcolor=bgcolor, font_color=font_color)
        self.directed = directed
        self.notebook = notebook
        self.nodes: list[Node] = []
        self.edges: list[Edge] = []
        self.options = Options()
        self.widgets: WidgetSpec | None = None
        self._index: dict[NodeId, int] = {}

    # -- nodes ---------------------------------------------------------

    def has_node(self, node_id: NodeId) -> bool:
        return node_id in self._index

    def node_index(self, node_id: NodeId) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise NodeNotFoundError(node_id) from None

    def get_node(self, node_id: NodeId) -> Node:
        return self.nodes[self.node_index(node_id)]

    def add_node(self, node_id: NodeId, label: str | None = None, **attrs) -> None:
        """Insert a node, or update the attributes of an existing one."""
        unknown = set(attrs) - set(_NODE_ATTRS)
        if unknown:
            raise ValueError(f"unknown node attribute(s): {', '.join(sorted(map(str, unknown)))}")
        if node_id in self._index:
            node = self.nodes[self._index[node_id]]
            if label is not None:
                node.label = label
            for key, value in attrs.items():
                setattr(node, key, value)
            return
        node = Node(id=node_id, label=label if label is not None else str(node_id))
        for key, value in attrs.items():
            setattr(node, key, value)
        self._index[node_id] = len(self.nodes)
        self.nodes.append(node)

    def add_nodes(self, ids, **attr_seqs) -> None:
        """Insert many nodes; keyword sequences broadcast per index.

        A bare string is treated as a single node id, not a sequence of
        characters.
        """
        if isinstance(ids, (int, str)):
            ids = [ids]
        else:
            ids = list(ids)
        for name, seq in attr_seqs.items():
            if len(seq) != len(ids):
                raise BroadcastError(name, expected=len(ids), got=len(seq))
        for k, node_id in enumerate(ids):
            attrs = {name: seq[k] for name, seq in attr_seqs.items()}
            label = attrs.pop("label", None)
            self.add_node(node_id, label, **attrs)

    # -- edges ---------------------------------------------------------

    def add_edge(self, source: NodeId, target: NodeId, **attrs) -> None:
        """Append an edge; both endpoints must already exist.

        `weight` is an alias for `value` (both drive scaled width).
        """
        for endpoint in (source, target):
            if endpoint not in self._index:
                raise NodeNotFoundError(endpoint)
        weight = attrs.pop("weight", None)
        unknown = set(attrs) - {"value", "width", "title"}
        if unknown:
            raise ValueError(f"unknown edge attribute(s): {', '.join(sorted(map(str, unknown)))}")
        edge = Edge(source=source, target=target, **attrs)
        if edge.value is None and weight is not None:
            edge.value = weight
        self.edges.append(edge)

    def add_edges(self, items) -> None:
        """Append edges from (from, to) pairs or (from, to, weight) triples.

        Fail-fast, not transactional: edges before the first bad item stay.
        """
        for item in items:
            if len(item) == 2:
                self.add_edge(item[0], item[1])
            elif len(item) == 3:
                self.add_edge(item[0], item[1], weight=item[2])
            else:
                raise ValueError(f"edge item must be a pair or triple, got {item!r}")

    # -- queries -------------------------------------------------------

    def get_adj_list(self) -> dict[NodeId, list[NodeId]]:
        """Neighbor sets, as duplicate-free lists in first-seen order.

        Direction is ignored: for directed networks a neighbor is any
        successor or predecessor (tooltip semantics). Every node appears
        as a key, isolated ones with an empty list.
        """
        adj: dict[NodeId, dict[NodeId, None]] = {node.id: {} for node in self.nodes}
        for edge in self.edges:
            adj[edge.source].setdefault(edge.target)
            adj[edge.target].setdefault(edge.source)
        return {node_id: list(neighbors) for node_id, neighbors in adj.items()}

    def degrees(self) -> list[int]:
        """Neighbor count per node, in insertion order."""
        adj = self.get_adj_list()
        return [len(adj[node.id]) for node in self.nodes]

    # -- options -------------------------------------------------------

    def barnes_hut(
        self,
        gravity: float = -80000,
        central_gravity: float = 0.3,
        spring_length: float = 250,
        spring_strength: float = 0.001,
        damping: float = 0.09,
        overlap: float = 0,
    ) -> None:
        """Select the barnesHut solver; other physics fields are untouched."""
        params = BarnesHutParams(
            gravity=gravity,
            central_gravity=central_gravity,
            spring_length=spring_length,
            spring_strength=spring_strength,
            damping=damping,
            overlap=overlap,
        )
        params.validate()
        self.options.physics.solver = "barnesHut"
        self.options.physics.params = params

    def set_options(self, text: str) -> None:
        """Apply an options script; present sections win over earlier calls."""
        self.options = apply_script(self.options, text)

    def show_buttons(self, filter_: list[str] | None = None) -> None:
        """Expose configurator sections in the emitted document."""
        self.widgets = select_configurator_widgets(filter_)

    # -- representation ------------------------------------------------

    def __repr__(self) -> str:
        edges = []
        for edge in self.edges:
            entry: dict = {"from": edge.source, "to": edge.target}
            if edge.value is not None:
                entry["value"] = edge.value
            if edge.width is not None:
                entry["width"] = edge.width
            if edge.title is not None:
                entry["title"] = edge.title
            edges.append(entry)
        return json.dumps(
            {
                "Nodes": [node.id for node in self.nodes],
                "Edges": edges,
                "Height": self.style.height,
                "Width": self.style.width,
            },
            indent=2,
        )


def scaled_node_radii(net: Network) -> list[float]:
    """Rendered radius per node, px, in insertion order.

    Nodes with a `value` share a population-relative linear scale from
    10 px to 30 px (all-equal values map to 10 px); a plain `size` is a
    raw radius; nodes with neither get 10 px. `value` wins over `size`.
    """
    values = [n.value for n in net.nodes if n.value is not None]
    vmin = min(values) if values else 0.0
    vmax = max(values) if values else 0.0
    radii = []
    for node in net.nodes:
        if node.value is not None:
            if vmax == vmin:
                radii.append(10.0)
            else:
                radii.append(10.0 + (node.value - vmin) / (vmax - vmin) * 20.0)
        elif node.size is not None:
            radii.append(float(node.size))
        else:
            radii.append(10.0)
    return radii


def scaled_edge_widths(net: Network) -> list[float]:
    """Rendered width per edge, px: 1 px to 15 px population-relative scale."""
    values = [e.value for e in net.edges if e.value is not None]
    vmin = min(values) if values else 0.0
    vmax = max(values) if values else 0.0
    widths = []
    for edge in net.edges:
        if edge.value is not None:
            if vmax == vmin:
                widths.append(1.0)
            else:
                widths.append(1.0 + (edge.value - vmin) / (vmax - vmin) * 14.0)
        elif edge.width is not None:
            widths.append(float(edge.width))
        else:
            widths.append(1.0)
    return widths
