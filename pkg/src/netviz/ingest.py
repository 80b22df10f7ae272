"""Build networks from external data: weighted edge-list CSV and node-link
interchange documents (topology only)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import CsvFormatError, DocumentError, NodeNotFoundError
from .network import Network, NetworkStyle

_REQUIRED_COLUMNS = ("Source", "Target", "Weight")


@dataclass
class EdgeRecord:
    source: str
    target: str
    weight: float


def parse_edge_csv(text: str) -> list[EdgeRecord]:
    """Parse a weighted edge list with a Source,Target,Weight header.

    Columns are matched by name (case-sensitive) in any order. Errors carry
    the 1-based line number.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvFormatError("empty document, expected a header row", 1) from None
    for column in _REQUIRED_COLUMNS:
        if column not in header:
            raise CsvFormatError(f"missing required column {column!r}", 1)
    col = {name: header.index(name) for name in _REQUIRED_COLUMNS}

    records = []
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CsvFormatError(
                f"expected {len(header)} fields, got {len(row)}", line)
        source = row[col["Source"]]
        target = row[col["Target"]]
        if not source or not target:
            raise CsvFormatError("Source and Target must be non-empty", line)
        raw_weight = row[col["Weight"]]
        try:
            weight = float(raw_weight)
        except ValueError:
            raise CsvFormatError(f"non-numeric Weight {raw_weight!r}", line) from None
        if not math.isfinite(weight):
            raise CsvFormatError(f"Weight must be finite, got {raw_weight!r}", line)
        records.append(EdgeRecord(source=source, target=target, weight=weight))
    return records


def import_node_link(doc: dict) -> Network:
    """Network from a node-link document; topology only.

    Only ids and link endpoints are read: any other attribute on nodes or
    links is dropped on purpose. Ids keep their JSON type (number vs
    string); directedness comes from the document.
    """
    if not isinstance(doc, dict):
        raise DocumentError("node-link document must be an object")
    directed = bool(doc.get("directed", False))
    net = Network(directed=directed)
    for entry in doc.get("nodes", []):
        if not isinstance(entry, dict) or "id" not in entry:
            raise DocumentError(f"node entry without an id: {entry!r}")
        net.add_node(entry["id"])
    for entry in doc.get("links", []):
        if not isinstance(entry, dict) or "source" not in entry or "target" not in entry:
            raise DocumentError(f"link entry without source/target: {entry!r}")
        source, target = entry["source"], entry["target"]
        if not net.has_node(source):
            raise NodeNotFoundError(source)
        if not net.has_node(target):
            raise NodeNotFoundError(target)
        net.add_edge(source, target)
    return net


def build_got_network(records: list[EdgeRecord], style: NetworkStyle | None = None) -> Network:
    """Character-relationship pipeline: one node per name with the name as
    tooltip, weighted edges, then neighbor lists appended to tooltips and
    neighbor counts driving node size."""
    style = style or NetworkStyle()
    net = Network(height=style.height, width=style.width,
                  bgcolor=style.bgcolor, font_color=style.font_color)
    net.barnes_hut()
    for record in records:
        net.add_node(record.source, record.source, title=record.source)
        net.add_node(record.target, record.target, title=record.target)
        net.add_edge(record.source, record.target, value=record.weight)

    neighbor_map = net.get_adj_list()
    for node in net.nodes:
        neighbors = neighbor_map[node.id]
        node.title = (node.title or "") + " Neighbors:<br>" + "<br>".join(
            str(n) for n in neighbors)
        node.value = len(neighbors)
    return net
