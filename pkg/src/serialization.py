"""
Line-oriented text format for elements, blocks and points.

    # half-swap of the Cantor set
    NV 1
    MAP [0] -> [1]
    MAP [1] -> [0]

Line j pairs domain subblock j with range subblock j. "e" is the empty word,
"#" starts a comment. Block documents use "BLOCK [w, ...]" lines instead.
Points are written coordinate by coordinate as prefix(period), separated by ";".
"""

from typing import Optional

from .constants import (
    ARROW,
    BITS,
    BLOCK_KEYWORD,
    COMMENT_CHAR,
    EMPTY_WORD_TOKEN,
    HEADER_KEYWORD,
    MAP_KEYWORD,
)
from .dyadic_core import Block, Subblock, validate_block
from .element import Element, Point, make_element
from .logger import get_module_logger

logger = get_module_logger("serialization")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line: int = line
        self.column: int = column


class EmptyPeriodError(ParseError):
    pass


class _LineReader:
    def __init__(self, text: str, line: int):
        self.text = text
        self.line = line
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.pos + 1)

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            found = self.text[self.pos : self.pos + len(literal)] or "end of line"
            raise self.error(f"expected {literal!r}, found {found!r}")
        self.pos += len(literal)

    def number(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a dimension")
        value = int(self.text[start : self.pos])
        if value < 1:
            self.pos = start
            raise self.error("dimension must be positive")
        return value

    def word(self) -> str:
        if self.text.startswith(EMPTY_WORD_TOKEN, self.pos):
            self.pos += len(EMPTY_WORD_TOKEN)
            return ""
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in BITS:
            self.pos += 1
        if start == self.pos:
            raise self.error(f"expected a binary word or {EMPTY_WORD_TOKEN!r}")
        return self.text[start : self.pos]

    def subblock(self, dimension: int) -> Subblock:
        self.expect("[")
        words = [self.word()]
        while len(words) < dimension:
            self.expect(", ")
            words.append(self.word())
        self.expect("]")
        return Subblock(tuple(words))

    def end(self) -> None:
        if self.pos != len(self.text):
            raise self.error(f"unexpected text {self.text[self.pos:]!r}")


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.split("\n"), start=1):
        content = raw.split(COMMENT_CHAR, 1)[0].rstrip()
        if content.strip():
            lines.append((number, content))
    return lines


def _read_document(text: str, keyword: str) -> tuple[int, list[_LineReader]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(f"missing {HEADER_KEYWORD!r} header", 1, 1)
    number, header = lines[0]
    reader = _LineReader(header, number)
    reader.expect(f"{HEADER_KEYWORD} ")
    dimension = reader.number()
    reader.end()

    body = []
    for number, content in lines[1:]:
        reader = _LineReader(content, number)
        reader.expect(f"{keyword} ")
        body.append(reader)
    return dimension, body


def parse_element(text: str) -> Element:
    dimension, body = _read_document(text, MAP_KEYWORD)
    domain, target = [], []
    for reader in body:
        domain.append(reader.subblock(dimension))
        reader.expect(f" {ARROW} ")
        target.append(reader.subblock(dimension))
        reader.end()
    logger.debug(f"parse_element: dimension {dimension}, {len(domain)} pieces")
    return make_element(domain, target)


def serialize_element(g: Element) -> str:
    lines = [f"{HEADER_KEYWORD} {g.dimension}"]
    lines.extend(f"{MAP_KEYWORD} {x} {ARROW} {y}" for x, y in g.pairs())
    return "\n".join(lines) + "\n"


def parse_block(text: str) -> Block:
    dimension, body = _read_document(text, BLOCK_KEYWORD)
    pieces = []
    for reader in body:
        pieces.append(reader.subblock(dimension))
        reader.end()
    return validate_block(pieces, dimension)


def serialize_block(B: Block) -> str:
    lines = [f"{HEADER_KEYWORD} {B.dimension}"]
    lines.extend(f"{BLOCK_KEYWORD} {piece}" for piece in B)
    return "\n".join(lines) + "\n"


def _parse_coordinate(text: str, column: int) -> tuple[str, str]:
    open_at = text.find("(")
    if open_at < 0 or not text.endswith(")"):
        raise ParseError(f"expected prefix(period), found {text!r}", 1, column)
    prefix = text[:open_at]
    period = text[open_at + 1 : -1]
    if prefix == EMPTY_WORD_TOKEN:
        prefix = ""
    if prefix.strip(BITS):
        raise ParseError(f"bad prefix {prefix!r}", 1, column)
    if not period:
        raise EmptyPeriodError("empty period", 1, column + open_at + 1)
    if period.strip(BITS):
        raise ParseError(f"bad period {period!r}", 1, column + open_at + 1)
    return prefix, period


def parse_point(text: str, dimension: Optional[int] = None) -> Point:
    coordinates = []
    column = 1
    for part in text.strip().split(";"):
        coordinates.append(_parse_coordinate(part.strip(), column))
        column += len(part) + 1
    if dimension is not None and len(coordinates) != dimension:
        raise ParseError(f"expected {dimension} coordinates, got {len(coordinates)}", 1, 1)
    return Point(tuple(coordinates))


def format_point(p: Point) -> str:
    return ";".join(f"{prefix}({period})" for prefix, period in p.coordinates)
