"""Declarative network graphs with force-directed layout and HTML export."""

from .errors import (
    BroadcastError,
    CsvFormatError,
    DocumentError,
    LayoutNumericsError,
    NetvizError,
    NodeNotFoundError,
    OptionsParseError,
    OptionsValidationError,
    StyleError,
    TemplateError,
)
from .network import Edge, Network, NetworkStyle, Node, scaled_edge_widths, scaled_node_radii
from .options import (
    BarnesHutParams,
    ForceAtlas2Params,
    HierarchicalRepulsionParams,
    Options,
    PhysicsOptions,
    RepulsionParams,
    Stabilization,
    WidgetSpec,
    parse_options_script,
    select_configurator_widgets,
    serialize_options,
)
from .layout import (
    ConvergenceReport,
    LayoutState,
    central_gravity_forces,
    initial_positions,
    positions_document,
    repulsive_forces,
    spring_forces,
    stabilize,
    step,
)
from .quadtree import QuadTree, build_quadtree
from .ingest import EdgeRecord, build_got_network, import_node_link, parse_edge_csv
from .emit import DataSets, emit_datasets, iframe_fragment, render_html, show

__version__ = "0.1.0"

__all__ = [
    "BarnesHutParams",
    "BroadcastError",
    "ConvergenceReport",
    "CsvFormatError",
    "DataSets",
    "DocumentError",
    "Edge",
    "EdgeRecord",
    "ForceAtlas2Params",
    "HierarchicalRepulsionParams",
    "LayoutNumericsError",
    "LayoutState",
    "NetvizError",
    "Network",
    "NetworkStyle",
    "Node",
    "NodeNotFoundError",
    "Options",
    "OptionsParseError",
    "OptionsValidationError",
    "PhysicsOptions",
    "QuadTree",
    "RepulsionParams",
    "Stabilization",
    "StyleError",
    "TemplateError",
    "WidgetSpec",
    "build_got_network",
    "build_quadtree",
    "central_gravity_forces",
    "emit_datasets",
    "iframe_fragment",
    "import_node_link",
    "initial_positions",
    "parse_edge_csv",
    "parse_options_script",
    "positions_document",
    "render_html",
    "repulsive_forces",
    "scaled_edge_widths",
    "scaled_node_radii",
    "select_configurator_widgets",
    "serialize_options",
    "show",
    "spring_forces",
    "stabilize",
    "step",
]
