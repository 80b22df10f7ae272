"""Serialize networks into viewer datasets, HTML documents, and the
notebook IFrame fragment."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from jinja2 import Environment, StrictUndefined

from .errors import TemplateError
from .network import Network
from .options import serialize_options

_REQUIRED_PLACEHOLDERS = (
    "NODES", "EDGES", "OPTIONS", "WIDGETS", "HEIGHT", "WIDTH", "BGCOLOR", "FONTCOLOR",
)

_NODE_KEY_ORDER = ("size", "value", "title", "x", "y", "color", "shape")
_EDGE_KEY_ORDER = ("value", "width", "title")

_VIEWER_FILENAME = "netviz_viewer.js"


@dataclass
class DataSets:
    """Node/edge record arrays in the shape the viewer consumes."""

    nodes: list[dict]
    edges: list[dict]

    def to_json(self, pretty: bool = False) -> str:
        data = {"nodes": self.nodes, "edges": self.edges}
        if pretty:
            return json.dumps(data, indent=2)
        return json.dumps(data, separators=(",", ":"))


def emit_datasets(net: Network, positions: dict | None = None) -> DataSets:
    """Dataset arrays for a network; `positions` (id -> (x, y)) fills x/y.

    Key order is fixed so serialized output is byte-stable. Titles pass
    through verbatim, markup included.
    """
    nodes = []
    for node in net.nodes:
        entry: dict = {"id": node.id, "label": node.label}
        for key in _NODE_KEY_ORDER:
            value = getattr(node, key, None)
            if value is not None:
                entry[key] = value
        if positions is not None and node.id in positions:
            x, y = positions[node.id]
            entry["x"] = float(x)
            entry["y"] = float(y)
        nodes.append(entry)

    edges = []
    for edge in net.edges:
        entry = {"from": edge.source, "to": edge.target}
        for key in _EDGE_KEY_ORDER:
            value = getattr(edge, key)
            if value is not None:
                entry[key] = value
        if net.directed:
            entry["arrows"] = "to"
        edges.append(entry)

    return DataSets(nodes=nodes, edges=edges)


def _embed_json(data) -> str:
    # "</" would terminate the surrounding <script>; "\/" is valid JSON.
    return json.dumps(data, separators=(",", ":")).replace("</", "<\\/")


def _default_template() -> str:
    return resources.files("netviz").joinpath("templates/network.html.j2").read_text("utf-8")


def packaged_viewer_bundle() -> str | None:
    """Text of the bundled viewer script, if the package ships one."""
    asset = resources.files("netviz").joinpath("assets/viewer.js")
    if asset.is_file():
        return asset.read_text("utf-8")
    return None


def render_html(
    net: Network,
    widgets=None,
    positions: dict | None = None,
    template_text: str | None = None,
    inline: bool = False,
    bundle_path: str | Path | None = None,
) -> str:
    """Render the self-contained HTML document.

    The viewer bundle is referenced by relative path unless `inline` is
    set, in which case its source is embedded (from `bundle_path` or the
    packaged copy). Deterministic: equal inputs give byte-identical text.
    """
    if template_text is None:
        template_text = _default_template()
    for name in _REQUIRED_PLACEHOLDERS:
        if "{{ " + name + " }}" not in template_text:
            raise TemplateError(f"template is missing the {name} placeholder")

    if inline:
        if bundle_path is not None:
            bundle = Path(bundle_path).read_text("utf-8")
        else:
            bundle = packaged_viewer_bundle()
            if bundle is None:
                raise TemplateError(
                    "no packaged viewer bundle to inline; pass bundle_path")
        script_tag = "<script>\n" + bundle.replace("</", "<\\/") + "\n</script>"
    else:
        script_tag = f'<script src="{_VIEWER_FILENAME}"></script>'

    datasets = emit_datasets(net, positions)
    spec = widgets if widgets is not None else net.widgets
    widget_sections = list(spec.sections) if spec is not None else []

    env = Environment(undefined=StrictUndefined, keep_trailing_newline=True)
    return env.from_string(template_text).render(
        NODES=_embed_json(datasets.nodes),
        EDGES=_embed_json(datasets.edges),
        OPTIONS=serialize_options(net.options).replace("</", "<\\/"),
        WIDGETS=_embed_json(widget_sections),
        HEIGHT=net.style.height,
        WIDTH=net.style.width,
        BGCOLOR=net.style.bgcolor,
        FONTCOLOR=net.style.font_color,
        SCRIPT_TAG=script_tag,
    )


def iframe_fragment(net: Network, path: str) -> str:
    return (f'<iframe src="{path}" width="{net.style.width}" '
            f'height="{net.style.height}" frameborder="0"></iframe>')


def show(net: Network, path: str | Path, **render_kwargs) -> str | None:
    """Write the HTML document; return the IFrame fragment in notebook mode.

    An HTML file is always generated, notebook or not.
    """
    path = Path(path)
    path.write_text(render_html(net, **render_kwargs), encoding="utf-8")
    if net.notebook:
        return iframe_fragment(net, str(path))
    return None
