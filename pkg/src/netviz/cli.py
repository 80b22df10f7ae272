"""Command-line front door.

Subcommands:

  build             edge-list CSV or node-link JSON -> network document
  layout            network document -> stabilized positions document
  render            network document (+ positions) -> HTML document
  options-validate  parse an options script, echo canonical JSON
  got-demo          full character-relationship pipeline, CSV -> HTML

Exit codes: 0 success, 2 usage, 3 file I/O, 4 parse error, 5 validation
error. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    CsvFormatError,
    DocumentError,
    NetvizError,
    NodeNotFoundError,
    OptionsParseError,
    OptionsValidationError,
    StyleError,
)
from .emit import render_html
from .ingest import build_got_network, import_node_link, parse_edge_csv
from .layout import positions_document, positions_mapping, stabilize
from .network import Network, NetworkStyle
from .options import (
    SOLVERS,
    apply_script,
    options_to_dict,
    parse_options_script,
    serialize_options,
    switch_solver,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_VALIDATION = 5

_GOT_STYLE = NetworkStyle(height="750px", width="100%",
                          bgcolor="#222222", font_color="white")


def network_document(net: Network) -> dict:
    """Node-link document plus an aligned attribute sidecar.

    The node-link half carries topology only; display attributes live in
    the "attributes" section, index-aligned with the nodes/links arrays.
    """
    node_attrs = []
    for node in net.nodes:
        attrs: dict = {}
        if node.label != str(node.id):
            attrs["label"] = node.label
        for key in ("size", "value", "title", "x", "y", "color"):
            value = getattr(node, key)
            if value is not None:
                attrs[key] = value
        node_attrs.append(attrs)
    edge_attrs = []
    for edge in net.edges:
        attrs = {}
        for key in ("value", "width", "title"):
            value = getattr(edge, key)
            if value is not None:
                attrs[key] = value
        edge_attrs.append(attrs)
    return {
        "directed": net.directed,
        "nodes": [{"id": node.id} for node in net.nodes],
        "links": [{"source": e.source, "target": e.target} for e in net.edges],
        "attributes": {
            "nodes": node_attrs,
            "edges": edge_attrs,
            "style": {
                "height": net.style.height,
                "width": net.style.width,
                "bgcolor": net.style.bgcolor,
                "font_color": net.style.font_color,
            },
            "options": options_to_dict(net.options),
        },
    }


def network_from_document(doc: dict) -> Network:
    """Rebuild a network from a document written by `network_document`."""
    net = import_node_link(doc)
    sidecar = doc.get("attributes")
    if not sidecar:
        return net
    node_attrs = sidecar.get("nodes", [])
    if node_attrs and len(node_attrs) != len(net.nodes):
        raise DocumentError("attributes.nodes is not aligned with nodes")
    for node, attrs in zip(net.nodes, node_attrs):
        for key, value in attrs.items():
            if key == "label":
                node.label = value
            elif key in ("size", "value", "title", "x", "y", "color"):
                setattr(node, key, value)
            else:
                raise DocumentError(f"unknown node attribute {key!r}")
    edge_attrs = sidecar.get("edges", [])
    if edge_attrs and len(edge_attrs) != len(net.edges):
        raise DocumentError("attributes.edges is not aligned with links")
    for edge, attrs in zip(net.edges, edge_attrs):
        for key, value in attrs.items():
            if key in ("value", "width", "title"):
                setattr(edge, key, value)
            else:
                raise DocumentError(f"unknown edge attribute {key!r}")
    style = sidecar.get("style")
    if style:
        net.style = NetworkStyle(**style)
    options = sidecar.get("options")
    if options is not None:
        net.options = apply_script(net.options, json.dumps(options))
    return net


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_network(path: str) -> Network:
    try:
        doc = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON: {exc}") from exc
    return network_from_document(doc)


def _apply_options_flags(net: Network, args) -> None:
    if getattr(args, "options", None):
        net.options = apply_script(net.options, _read_text(args.options))
    solver = getattr(args, "solver", None)
    if solver and net.options.physics.solver != solver:
        net.options = switch_solver(net.options, solver)


def _cmd_build(args) -> int:
    if args.edges:
        records = parse_edge_csv(_read_text(args.edges))
        net = Network(directed=args.directed)
        for record in records:
            net.add_node(record.source, record.source)
            net.add_node(record.target, record.target)
            net.add_edge(record.source, record.target, value=record.weight)
    else:
        doc = json.loads(_read_text(args.nodelink))
        net = import_node_link(doc)
        if args.directed:
            net.directed = True
    _write_text(args.out, json.dumps(network_document(net), separators=(",", ":")) + "\n")
    print(f"wrote {args.out}: {len(net.nodes)} nodes, {len(net.edges)} edges",
          file=sys.stderr)
    return EXIT_OK


def _cmd_layout(args) -> int:
    net = _load_network(args.network)
    _apply_options_flags(net, args)
    state, report = stabilize(net, seed=args.seed)
    _write_text(args.out,
                json.dumps(positions_document(state, report), separators=(",", ":")) + "\n")
    status = "converged" if report.converged else "did not converge"
    print(f"{status} after {report.iterations_used} iterations "
          f"(max speed {report.final_max_speed:.6g})", file=sys.stderr)
    return EXIT_OK


def _cmd_render(args) -> int:
    net = _load_network(args.network)
    _apply_options_flags(net, args)
    style = {
        "height": args.height or net.style.height,
        "width": args.width or net.style.width,
        "bgcolor": args.bgcolor or net.style.bgcolor,
        "font_color": args.font_color or net.style.font_color,
    }
    net.style = NetworkStyle(**style)
    if args.show_buttons is not None:
        sections = [s for s in args.show_buttons.split(",") if s]
        net.show_buttons(sections or None)
    positions = None
    if args.positions:
        positions = positions_mapping(json.loads(_read_text(args.positions)))
    _write_text(args.out, render_html(net, positions=positions, inline=args.inline))
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_options_validate(args) -> int:
    options = parse_options_script(_read_text(args.script))
    print(serialize_options(options))
    return EXIT_OK


def _cmd_got_demo(args) -> int:
    records = parse_edge_csv(_read_text(args.csv))
    net = build_got_network(records, _GOT_STYLE)
    _write_text(args.out, render_html(net))
    print(f"wrote {args.out}: {len(net.nodes)} nodes, {len(net.edges)} edges",
          file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netviz",
        description="Build, lay out, and render interactive network graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a network document from input files")
    source = p_build.add_mutually_exclusive_group(required=True)
    source.add_argument("--edges", help="edge-list CSV (Source,Target,Weight)")
    source.add_argument("--nodelink", help="node-link JSON document")
    p_build.add_argument("--directed", action="store_true")
    p_build.add_argument("--out", required=True)
    p_build.set_defaults(func=_cmd_build)

    p_layout = sub.add_parser("layout", help="stabilize and write positions")
    p_layout.add_argument("network", help="network document from `build`")
    p_layout.add_argument("--solver", choices=SOLVERS)
    p_layout.add_argument("--seed", type=int, default=0)
    p_layout.add_argument("--options", help="options script file")
    p_layout.add_argument("--out", required=True)
    p_layout.set_defaults(func=_cmd_layout)

    p_render = sub.add_parser("render", help="emit the HTML document")
    p_render.add_argument("network", help="network document from `build`")
    p_render.add_argument("--positions", help="positions document from `layout`")
    p_render.add_argument("--options", help="options script file")
    p_render.add_argument("--solver", choices=SOLVERS)
    p_render.add_argument("--show-buttons", dest="show_buttons",
                          help="comma-separated configurator sections; empty = all")
    p_render.add_argument("--height")
    p_render.add_argument("--width")
    p_render.add_argument("--bgcolor")
    p_render.add_argument("--font-color", dest="font_color")
    p_render.add_argument("--inline", action="store_true",
                          help="embed the viewer bundle instead of referencing it")
    p_render.add_argument("--out", required=True)
    p_render.set_defaults(func=_cmd_render)

    p_validate = sub.add_parser("options-validate",
                                help="parse an options script and echo canonical JSON")
    p_validate.add_argument("script")
    p_validate.set_defaults(func=_cmd_options_validate)

    p_got = sub.add_parser("got-demo",
                           help="character-relationship pipeline: CSV to HTML")
    p_got.add_argument("csv")
    p_got.add_argument("--out", required=True)
    p_got.set_defaults(func=_cmd_got_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OptionsParseError, CsvFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OptionsValidationError, DocumentError, NodeNotFoundError, StyleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NetvizError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
