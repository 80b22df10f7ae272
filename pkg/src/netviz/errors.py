"""Exception hierarchy shared across the package."""

from __future__ import annotations


class NetvizError(Exception):
    """Base class for all netviz errors."""


class StyleError(NetvizError, ValueError):
    """Malformed style value (e.g. a CSS length that is neither '<n>px' nor '<n>%')."""


class NodeNotFoundError(NetvizError, KeyError):
    """An operation referenced a node id that is not in the network."""

    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(node_id)

    def __str__(self) -> str:
        return f"node not found: {self.node_id!r}"


class BroadcastError(NetvizError, ValueError):
    """A per-node attribute sequence does not match the number of ids."""

    def __init__(self, attribute: str, expected: int, got: int):
        self.attribute = attribute
        self.expected = expected
        self.got = got
        super().__init__(f"{attribute!r}: expected {expected} values, got {got}")


class OptionsParseError(NetvizError, ValueError):
    """Syntax error in an options script; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class OptionsValidationError(NetvizError, ValueError):
    """Semantically invalid options (unknown solver, out-of-range value, ...)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class CsvFormatError(NetvizError, ValueError):
    """Malformed edge-list CSV; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"{message} (line {line})")


class DocumentError(NetvizError, ValueError):
    """Malformed node-link or positions document."""


class LayoutNumericsError(NetvizError, ArithmeticError):
    """Non-finite value encountered during layout; names the offending node."""

    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"non-finite force on node {node_id!r}")


class TemplateError(NetvizError, ValueError):
    """The HTML template is missing a required placeholder."""
