"""Parser for the options configuration script.

Grammar:

    WS* ("var" WS+ "options" WS* "=" WS*)? json-object WS* ";"? WS*

The body is strict JSON (double-quoted keys, no comments, no trailing
commas). Every parsed value keeps its 1-based line/column so semantic
validation can point at the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import OptionsParseError

_WS = " \t\r\n"


@dataclass
class Positioned:
    """A parsed JSON value annotated with its source position.

    Objects are dict[str, Positioned] (insertion-ordered), arrays are
    list[Positioned], scalars are plain Python values.
    """

    value: Any
    line: int
    column: int


def strip_positions(node: Positioned) -> Any:
    """Convert a Positioned tree back to plain Python values."""
    v = node.value
    if isinstance(v, dict):
        return {k: strip_positions(child) for k, child in v.items()}
    if isinstance(v, list):
        return [strip_positions(child) for child in v]
    return v


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def error(self, message: str) -> OptionsParseError:
        return OptionsParseError(message, self.line, self.column)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self, n: int = 1) -> str:
        taken = self.text[self.pos : self.pos + n]
        for ch in taken:
            if ch == "\n":
                self.line += 1
                self.column = 1
            else:
                self.column += 1
        self.pos += n
        return taken

    def skip_ws(self) -> None:
        while self.peek() in _WS and self.peek() != "":
            self.advance()

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.advance()

    def match_keyword(self, word: str) -> bool:
        if self.text.startswith(word, self.pos):
            self.advance(len(word))
            return True
        return False


def _parse_string(s: _Scanner) -> str:
    s.expect('"')
    out: list[str] = []
    while True:
        ch = s.peek()
        if ch == "":
            raise s.error("unterminated string")
        if ch == '"':
            s.advance()
            return "".join(out)
        if ch == "\\":
            s.advance()
            esc = s.peek()
            if esc == "u":
                s.advance()
                hexdigits = s.advance(4)
                if len(hexdigits) != 4 or any(c not in "0123456789abcdefABCDEF" for c in hexdigits):
                    raise s.error("invalid \\u escape")
                out.append(chr(int(hexdigits, 16)))
            elif esc in '"\\/bfnrt':
                s.advance()
                out.append({'"': '"', "\\": "\\", "/": "/", "b": "\b",
                            "f": "\f", "n": "\n", "r": "\r", "t": "\t"}[esc])
            else:
                raise s.error(f"invalid escape character {esc!r}")
        elif ord(ch) < 0x20:
            raise s.error("control character in string")
        else:
            s.advance()
            out.append(ch)


def _parse_number(s: _Scanner) -> int | float:
    start = s.pos
    if s.peek() == "-":
        s.advance()
    if not s.peek().isdigit():
        raise s.error("invalid number")
    while s.peek().isdigit():
        s.advance()
    is_float = False
    if s.peek() == ".":
        is_float = True
        s.advance()
        if not s.peek().isdigit():
            raise s.error("digit expected after decimal point")
        while s.peek().isdigit():
            s.advance()
    if s.peek() in "eE":
        is_float = True
        s.advance()
        if s.peek() in "+-":
            s.advance()
        if not s.peek().isdigit():
            raise s.error("digit expected in exponent")
        while s.peek().isdigit():
            s.advance()
    literal = s.text[start : s.pos]
    return float(literal) if is_float else int(literal)


def _parse_value(s: _Scanner) -> Positioned:
    s.skip_ws()
    line, column = s.line, s.column
    ch = s.peek()
    if ch == "":
        raise s.error("unexpected end of input")
    if ch == "{":
        return Positioned(_parse_object(s), line, column)
    if ch == "[":
        return Positioned(_parse_array(s), line, column)
    if ch == '"':
        return Positioned(_parse_string(s), line, column)
    if ch == "-" or ch.isdigit():
        return Positioned(_parse_number(s), line, column)
    if s.match_keyword("true"):
        return Positioned(True, line, column)
    if s.match_keyword("false"):
        return Positioned(False, line, column)
    if s.match_keyword("null"):
        return Positioned(None, line, column)
    raise s.error(f"unexpected character {ch!r}")


def _parse_object(s: _Scanner) -> dict[str, Positioned]:
    s.expect("{")
    members: dict[str, Positioned] = {}
    s.skip_ws()
    if s.peek() == "}":
        s.advance()
        return members
    while True:
        s.skip_ws()
        if s.peek() != '"':
            raise s.error("object keys must be double-quoted strings")
        key_line, key_column = s.line, s.column
        key = _parse_string(s)
        if key in members:
            raise OptionsParseError(f"duplicate key {key!r}", key_line, key_column)
        s.skip_ws()
        s.expect(":")
        members[key] = _parse_value(s)
        s.skip_ws()
        if s.peek() == ",":
            s.advance()
            continue
        if s.peek() == "}":
            s.advance()
            return members
        found = repr(s.peek()) if s.peek() else "end of input"
        raise s.error(f"expected ',' or '}}', found {found}")


def _parse_array(s: _Scanner) -> list[Positioned]:
    s.expect("[")
    items: list[Positioned] = []
    s.skip_ws()
    if s.peek() == "]":
        s.advance()
        return items
    while True:
        items.append(_parse_value(s))
        s.skip_ws()
        if s.peek() == ",":
            s.advance()
            continue
        if s.peek() == "]":
            s.advance()
            return items
        found = repr(s.peek()) if s.peek() else "end of input"
        raise s.error(f"expected ',' or ']', found {found}")


def parse_script(text: str) -> Positioned:
    """Parse an options script (or bare JSON object) into a Positioned tree."""
    s = _Scanner(text)
    s.skip_ws()
    if s.match_keyword("var"):
        if s.peek() not in _WS:
            raise s.error("expected whitespace after 'var'")
        s.skip_ws()
        if not s.match_keyword("options"):
            raise s.error("expected 'options'")
        s.skip_ws()
        s.expect("=")
        s.skip_ws()
    if s.peek() != "{":
        found = repr(s.peek()) if s.peek() else "end of input"
        raise s.error(f"expected a JSON object, found {found}")
    root = _parse_value(s)
    s.skip_ws()
    if s.peek() == ";":
        s.advance()
        s.skip_ws()
    if s.peek() != "":
        raise s.error(f"trailing content after options object: {s.peek()!r}")
    return root
