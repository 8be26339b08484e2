"""
SVG pictures of 2V block pairs: domain square on the left, range square on the right.

Coordinate 1 runs horizontally (bit 0 = left half), coordinate 2 vertically
(bit 0 = top half). Paired pieces share an index label and a colour.
"""

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Optional

from .config import get_limit
from .constants import (
    CONFIG_SVG_SIZE,
    GOLDEN_ANGLE_DEGREES,
    SVG_GAP_FRACTION,
    SVG_LABEL_FONT_SIZE,
    SVG_NAMESPACE,
)
from .dyadic_core import DimensionMismatchError, InvalidInputError, Subblock
from .element import Element
from .logger import get_module_logger

logger = get_module_logger("render")


def exact_decimal(value: Fraction) -> str:
    """Finite decimal expansion of a dyadic fraction."""
    denominator = value.denominator
    if denominator & (denominator - 1):
        raise InvalidInputError(f"{value} has no finite binary expansion")
    places = denominator.bit_length() - 1
    if places == 0:
        return str(value.numerator)
    digits = str(abs(value.numerator) * 5**places).rjust(places + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:].rstrip('0')}"


def _unit_interval(word: str) -> tuple[Fraction, Fraction]:
    """Start and length of a dyadic interval inside [0, 1]."""
    length = Fraction(1, 2 ** len(word))
    start = int(word, 2) * length if word else Fraction(0)
    return start, length


def piece_rectangle(piece: Subblock, size: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """x, y, width, height of a 2-dimensional subblock in a size x size square."""
    x, width = _unit_interval(piece.words[0])
    y, height = _unit_interval(piece.words[1])
    return x * size, y * size, width * size, height * size


def piece_colour(index: int) -> str:
    hue = (index * GOLDEN_ANGLE_DEGREES) % 360
    return f"hsl({hue:.3f}, 65%, 72%)"


def _draw_piece(
    parent: ET.Element, piece: Subblock, index: int, size: int, offset: Fraction
) -> None:
    x, y, width, height = piece_rectangle(piece, size)
    ET.SubElement(
        parent,
        "rect",
        {
            "x": exact_decimal(x + offset),
            "y": exact_decimal(y),
            "width": exact_decimal(width),
            "height": exact_decimal(height),
            "fill": piece_colour(index),
            "stroke": "black",
            "stroke-width": "1",
            "data-index": str(index),
        },
    )
    label = ET.SubElement(
        parent,
        "text",
        {
            "x": exact_decimal(x + offset + width / 2),
            "y": exact_decimal(y + height / 2),
            "font-size": str(SVG_LABEL_FONT_SIZE),
            "text-anchor": "middle",
            "dominant-baseline": "central",
        },
    )
    label.text = str(index)


def render_svg(g: Element, size: Optional[int] = None) -> str:
    if g.dimension != 2:
        raise DimensionMismatchError(2, g.dimension)
    size = get_limit(CONFIG_SVG_SIZE, size)
    if size & (size - 1):
        raise InvalidInputError(f"SVG size must be a power of two, got {size}")

    gap = Fraction(size, SVG_GAP_FRACTION)
    width = 2 * size + gap
    svg = ET.Element(
        "svg",
        {
            "xmlns": SVG_NAMESPACE,
            "width": exact_decimal(width),
            "height": str(size),
            "viewBox": f"0 0 {exact_decimal(width)} {size}",
        },
    )
    domain_group = ET.SubElement(svg, "g", {"class": "domain"})
    range_group = ET.SubElement(svg, "g", {"class": "range"})
    for i, (x, y) in enumerate(g.pairs()):
        _draw_piece(domain_group, x, i, size, Fraction(0))
        _draw_piece(range_group, y, i, size, size + gap)

    logger.debug(f"render_svg: {len(g)} + {len(g)} rectangles at size {size}")
    return ET.tostring(svg, encoding="unicode") + "\n"
