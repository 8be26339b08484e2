"""
The dyadic rationals inside 2V: a shift of infinite order and its chain of square roots.

Coordinate 1 is horizontal and coordinate 2 vertical. The base shift moves the
vertical coordinate by 0 -> 00, 10 -> 01, 11 -> 1. root_chain(i) cycles the 2^i
vertical columns one step to the right and applies the shift when a strip
wraps from the last column back to the first, so squaring it gives
root_chain(i - 1).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .config import get_limit
from .constants import CONFIG_SIZE_CAP
from .dyadic_core import DimensionMismatchError, InvalidInputError, Subblock
from .element import Element, compose, equal, identity, make_element, power
from .logger import get_module_logger

logger = get_module_logger("roots")

SHIFT_SOURCE = ("0", "10", "11")
SHIFT_TARGET = ("00", "01", "1")

_DYADIC_PATTERN = re.compile(
    r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?:2\s*\^\s*(?P<exp>\d+)|(?P<den>\d+)))?\s*$"
)


class ResourceLimitError(Exception):
    def __init__(self, requested: int, limit: int):
        super().__init__(f"Requested {requested} pieces, limit is {limit}")
        self.requested: int = requested
        self.limit: int = limit


@dataclass(frozen=True)
class DyadicRational:
    """numerator / 2**exponent with the exponent as small as possible."""

    numerator: int
    exponent: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise InvalidInputError(f"Exponent must be non-negative, got {self.exponent}")
        k, i = self.numerator, self.exponent
        if k == 0:
            i = 0
        while i > 0 and k % 2 == 0:
            k //= 2
            i -= 1
        object.__setattr__(self, "numerator", k)
        object.__setattr__(self, "exponent", i)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicRational":
        denominator = value.denominator
        if denominator & (denominator - 1):
            raise InvalidInputError(f"{value} is not a dyadic rational")
        return cls(value.numerator, denominator.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Accepts "k", "k/2^i" and "k/m" with m a power of two."""
        match = _DYADIC_PATTERN.match(text)
        if not match:
            raise InvalidInputError(f"Not a dyadic rational: {text!r}")
        numerator = int(match["num"])
        if match["exp"] is not None:
            return cls(numerator, int(match["exp"]))
        if match["den"] is not None:
            denominator = int(match["den"])
            if denominator == 0:
                raise InvalidInputError(f"Zero denominator in {text!r}")
            return cls.from_fraction(Fraction(numerator, denominator))
        return cls(numerator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 2**self.exponent)

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        return DyadicRational.from_fraction(self.to_fraction() + other.to_fraction())

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        return self + (-other)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"


def base_shift() -> Element:
    return make_element(
        [Subblock.of("", word) for word in SHIFT_SOURCE],
        [Subblock.of("", word) for word in SHIFT_TARGET],
    )


def root_chain(i: int, size_cap: Optional[int] = None) -> Element:
    """h_i with h_i squared equal to h_(i-1); h_0 is the base shift."""
    if i < 0:
        raise InvalidInputError(f"Root index must be non-negative, got {i}")
    if i == 0:
        return base_shift()
    limit = get_limit(CONFIG_SIZE_CAP, size_cap)
    columns = 2**i
    if columns > limit:
        raise ResourceLimitError(columns, limit)

    words = [format(k, f"0{i}b") for k in range(columns)]
    domain = [Subblock.of(words[k], "") for k in range(columns - 1)]
    target = [Subblock.of(words[k + 1], "") for k in range(columns - 1)]
    for source, image in zip(SHIFT_SOURCE, SHIFT_TARGET):
        domain.append(Subblock.of(words[-1], source))
        target.append(Subblock.of(words[0], image))
    logger.debug(f"root_chain({i}): {len(domain)} pieces")
    return make_element(domain, target)


def dyadic_to_element(t: DyadicRational, size_cap: Optional[int] = None) -> Element:
    if t.numerator == 0:
        return identity(2)
    return power(root_chain(t.exponent, size_cap), t.numerator)


def verify_root(h: Element, g: Element, k: int) -> bool:
    """Whether h is a k-th root of g."""
    if h.dimension != g.dimension:
        raise DimensionMismatchError(h.dimension, g.dimension)
    if k < 2:
        raise InvalidInputError(f"Root order must be at least 2, got {k}")
    return equal(power(h, k), g)


def root_order(h: Element, g: Element, max_k: int) -> Optional[int]:
    if h.dimension != g.dimension:
        raise DimensionMismatchError(h.dimension, g.dimension)
    current = h
    for k in range(2, max_k + 1):
        current = compose(current, h)
        if equal(current, g):
            return k
    return None
